#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace tlab {

/// A signed permutation of {1..5}: entry i holds a label and a sign.
struct Code {
  struct Entry {
    int label = 1;
    bool plus = true;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };
  std::array<Entry, 5> entries{};

  static constexpr int count = 3840;

  static Code identity() { return {{{{1, true}, {2, true}, {3, true}, {4, true}, {5, true}}}}; }

  friend bool operator==(const Code&, const Code&) = default;

  /// Lexicographic on (label, sign) pairs with + before -.
  friend bool operator<(const Code& p, const Code& q) {
    for (int i = 0; i < 5; ++i) {
      if (p.entries[i].label != q.entries[i].label) return p.entries[i].label < q.entries[i].label;
      if (p.entries[i].plus != q.entries[i].plus) return p.entries[i].plus;
    }
    return false;
  }

  bool valid() const {
    int seen = 0;
    for (const Entry& e : entries) {
      if (e.label < 1 || e.label > 5) return false;
      seen |= 1 << e.label;
    }
    return seen == 0b111110;
  }

  bool contains(int label, bool plus) const {
    for (const Entry& e : entries)
      if (e.label == label && e.plus == plus) return true;
    return false;
  }

  /// Accepts "1+2-3+4-5-" with ASCII or Unicode minus signs and optional
  /// spaces.
  static Code parse(std::string_view s) {
    Code c;
    int n = 0;
    std::size_t i = 0;
    auto fail = [&] { throw ParseError("invalid code '" + std::string(s) + "'"); };
    while (i < s.size()) {
      if (s[i] == ' ') {
        ++i;
        continue;
      }
      if (n == 5 || s[i] < '1' || s[i] > '5') fail();
      c.entries[n].label = s[i] - '0';
      ++i;
      if (i < s.size() && s[i] == '+') {
        c.entries[n].plus = true;
        ++i;
      } else if (i < s.size() && s[i] == '-') {
        c.entries[n].plus = false;
        ++i;
      } else if (s.substr(i, 3) == "\xE2\x88\x92") {  // U+2212
        c.entries[n].plus = false;
        i += 3;
      } else {
        fail();
      }
      ++n;
    }
    if (n != 5 || !c.valid()) fail();
    return c;
  }

  std::string str() const {
    std::string out;
    for (const Entry& e : entries) {
      out += static_cast<char>('0' + e.label);
      out += e.plus ? '+' : '-';
    }
    return out;
  }

  /// Bijection onto 0..3839: permutation rank times 32 plus the sign mask.
  int index() const {
    std::array<int, 5> labels{};
    for (int i = 0; i < 5; ++i) labels[i] = entries[i].label;
    int rank = 0;
    static constexpr int fact[5] = {24, 6, 2, 1, 1};
    for (int i = 0; i < 5; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < 5; ++j) smaller += labels[j] < labels[i];
      rank += smaller * fact[i];
    }
    int mask = 0;
    for (int i = 0; i < 5; ++i) mask |= (entries[i].plus ? 0 : 1) << i;
    return rank * 32 + mask;
  }

  static Code from_index(int idx) {
    int rank = idx / 32, mask = idx % 32;
    std::vector<int> pool{1, 2, 3, 4, 5};
    static constexpr int fact[5] = {24, 6, 2, 1, 1};
    Code c;
    for (int i = 0; i < 5; ++i) {
      int k = rank / fact[i];
      rank %= fact[i];
      c.entries[i].label = pool[k];
      pool.erase(pool.begin() + k);
      c.entries[i].plus = !((mask >> i) & 1);
    }
    return c;
  }
};

enum class Gen { a1, a1inv, a2, b1, b1inv, b2 };

inline std::string gen_name(Gen g) {
  switch (g) {
    case Gen::a1: return "a1";
    case Gen::a1inv: return "a1^-1";
    case Gen::a2: return "a2";
    case Gen::b1: return "b1";
    case Gen::b1inv: return "b1^-1";
    case Gen::b2: return "b2";
  }
  return "?";
}

/// b1: last entry to the front with its sign flipped. b2: reversal.
/// a1: label k -> k+1, with 5 -> 1 flipping the sign. a2: label k -> 6-k.
inline Code apply(Gen g, const Code& c) {
  Code out = c;
  auto& e = out.entries;
  switch (g) {
    case Gen::b1:
      for (int i = 0; i < 5; ++i) e[(i + 1) % 5] = c.entries[i];
      e[0].plus = !e[0].plus;
      break;
    case Gen::b1inv:
      for (int i = 0; i < 5; ++i) e[i] = c.entries[(i + 1) % 5];
      e[4].plus = !e[4].plus;
      break;
    case Gen::b2:
      for (int i = 0; i < 5; ++i) e[i] = c.entries[4 - i];
      break;
    case Gen::a1:
      for (auto& x : e) {
        if (x.label == 5) x.plus = !x.plus;
        x.label = x.label % 5 + 1;
      }
      break;
    case Gen::a1inv:
      for (auto& x : e) {
        if (x.label == 1) x.plus = !x.plus;
        x.label = (x.label + 3) % 5 + 1;
      }
      break;
    case Gen::a2:
      for (auto& x : e) x.label = 6 - x.label;
      break;
  }
  return out;
}

/// A product of generators written left to right, e.g. "b1^-2 b2".
/// Applied as a composition of maps: the rightmost factor acts first.
struct GroupWord {
  std::vector<Gen> tokens;

  /// Accepts a1, a2, b1, b2 (also alpha1 / beta1 / Greek letters), each
  /// optionally followed by an integer exponent "^k", "^{k}" or "^(k)".
  /// Whitespace and '*' separate factors.
  static GroupWord parse(std::string_view s) {
    GroupWord w;
    std::size_t i = 0;
    auto fail = [&] { throw ParseError("invalid group word '" + std::string(s) + "'"); };
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    while (i < s.size()) {
      if (s[i] == ' ' || s[i] == '*') {
        ++i;
        continue;
      }
      char kind = 0;
      if (starts("alpha")) { kind = 'a'; i += 5; }
      else if (starts("beta")) { kind = 'b'; i += 4; }
      else if (starts("\xCE\xB1")) { kind = 'a'; i += 2; }  // alpha
      else if (starts("\xCE\xB2")) { kind = 'b'; i += 2; }  // beta
      else if (s[i] == 'a' || s[i] == 'b') { kind = s[i]; ++i; }
      else fail();
      if (starts("_")) ++i;
      if (i >= s.size() || (s[i] != '1' && s[i] != '2')) fail();
      const int which = s[i] - '0';
      ++i;
      long exp = 1;
      if (starts("^")) {
        ++i;
        char close = 0;
        if (starts("{")) close = '}';
        else if (starts("(")) close = ')';
        if (close) ++i;
        bool neg = false;
        if (starts("-")) { neg = true; ++i; }
        else if (starts("\xE2\x88\x92")) { neg = true; i += 3; }
        std::size_t j = i;
        while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
        if (j == i) fail();
        exp = std::stol(std::string(s.substr(i, j - i)));
        if (neg) exp = -exp;
        i = j;
        if (close) {
          if (i >= s.size() || s[i] != close) fail();
          ++i;
        }
      }
      Gen fwd, inv;
      if (kind == 'a' && which == 1) { fwd = Gen::a1; inv = Gen::a1inv; }
      else if (kind == 'b' && which == 1) { fwd = Gen::b1; inv = Gen::b1inv; }
      else if (kind == 'a') { fwd = inv = Gen::a2; }
      else { fwd = inv = Gen::b2; }
      for (long k = 0; k < (exp < 0 ? -exp : exp); ++k) w.tokens.push_back(exp < 0 ? inv : fwd);
    }
    return w;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) out += (i ? " " : "") + gen_name(tokens[i]);
    return out;
  }
};

inline Code apply_word(const Code& c, const GroupWord& w) {
  Code out = c;
  for (auto it = w.tokens.rbegin(); it != w.tokens.rend(); ++it) out = apply(*it, out);
  return out;
}

inline Code apply_word(const Code& c, std::string_view w) { return apply_word(c, GroupWord::parse(w)); }

/// Orbit under the group generated by a1, a2, b1, b2, sorted ascending.
inline std::vector<Code> orbit(const Code& c) {
  std::vector<char> seen(Code::count, 0);
  std::vector<Code> out{c}, stack{c};
  seen[c.index()] = 1;
  while (!stack.empty()) {
    Code x = stack.back();
    stack.pop_back();
    for (Gen g : {Gen::a1, Gen::a2, Gen::b1, Gen::b2}) {
      Code y = apply(g, x);
      if (!seen[y.index()]) {
        seen[y.index()] = 1;
        out.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Contains 1+, 2+, 3+ and 4+.
inline bool is_trivial_code(const Code& c) {
  for (int k = 1; k <= 4; ++k)
    if (!c.contains(k, true)) return false;
  return true;
}

enum class CodeClass { Trivial, C1, C2, C3, C4, D5, E6 };

inline std::string class_name(CodeClass k) {
  static const char* names[] = {"TRIVIAL", "C1", "C2", "C3", "C4", "D5", "E6"};
  return names[static_cast<int>(k)];
}

inline CodeClass parse_class(std::string_view s) {
  static const std::map<std::string, CodeClass, std::less<>> m{
      {"TRIVIAL", CodeClass::Trivial}, {"C1", CodeClass::C1}, {"C2", CodeClass::C2}, {"C3", CodeClass::C3},
      {"C4", CodeClass::C4},           {"D5", CodeClass::D5}, {"E6", CodeClass::E6}};
  auto it = m.find(s);
  if (it == m.end()) throw ParseError("unknown class '" + std::string(s) + "'");
  return it->second;
}

/// The listed representatives of the six trivial-free classes.
inline Code class_representative(CodeClass k) {
  switch (k) {
    case CodeClass::C1: return Code::parse("3+2-1+4+5+");
    case CodeClass::C2: return Code::parse("3+2-1+5+4+");
    case CodeClass::C3: return Code::parse("3+2-4+1+5+");
    case CodeClass::C4: return Code::parse("3+2-5+1+4+");
    case CodeClass::D5: return Code::parse("4+2-1+3+5+");
    case CodeClass::E6: return Code::parse("4+1+3-5+2+");
    case CodeClass::Trivial: break;
  }
  return Code::identity();
}

inline constexpr std::array<CodeClass, 6> nontrivial_classes{CodeClass::C1, CodeClass::C2, CodeClass::C3,
                                                             CodeClass::C4, CodeClass::D5, CodeClass::E6};

struct Classification {
  /// Orbits, each sorted, listed in order of their smallest element.
  std::vector<std::vector<Code>> orbits;
  /// orbit_of[code.index()] is the position of the code's orbit.
  std::vector<int> orbit_of;
  /// Positions of the orbits without a trivial code.
  std::vector<std::size_t> trivial_free;
};

inline Classification classify_all() {
  Classification cl;
  cl.orbit_of.assign(Code::count, -1);
  std::vector<Code> all;
  for (int i = 0; i < Code::count; ++i) all.push_back(Code::from_index(i));
  std::sort(all.begin(), all.end());
  for (const Code& c : all) {
    if (cl.orbit_of[c.index()] >= 0) continue;
    const int id = static_cast<int>(cl.orbits.size());
    cl.orbits.push_back(orbit(c));
    for (const Code& x : cl.orbits.back()) cl.orbit_of[x.index()] = id;
  }
  for (std::size_t i = 0; i < cl.orbits.size(); ++i)
    if (std::none_of(cl.orbits[i].begin(), cl.orbits[i].end(), is_trivial_code)) cl.trivial_free.push_back(i);
  return cl;
}

inline const Classification& classification() {
  static const Classification cl = classify_all();
  return cl;
}

inline CodeClass canonical_class(const Code& c) {
  const Classification& cl = classification();
  const int id = cl.orbit_of[c.index()];
  for (CodeClass k : nontrivial_classes)
    if (cl.orbit_of[class_representative(k).index()] == id) return k;
  return CodeClass::Trivial;
}

/// Smallest code of the orbit.
inline Code canonical_representative(const Code& c) {
  const Classification& cl = classification();
  return cl.orbits[cl.orbit_of[c.index()]].front();
}

inline bool same_orbit(const Code& p, const Code& q) {
  const Classification& cl = classification();
  return cl.orbit_of[p.index()] == cl.orbit_of[q.index()];
}

/// Rook placement: column i holds a rook in row label_i, white for +.
struct Board {
  std::array<int, 5> row_of_column{};
  std::array<bool, 5> white{};

  friend bool operator==(const Board&, const Board&) = default;

  bool valid() const {
    int seen = 0;
    for (int r : row_of_column) {
      if (r < 1 || r > 5) return false;
      seen |= 1 << r;
    }
    return seen == 0b111110;
  }

  /// '.' empty, 'W' white rook, 'B' black rook; row 1 first.
  std::string str() const {
    std::string out;
    for (int r = 1; r <= 5; ++r) {
      for (int col = 0; col < 5; ++col) out += row_of_column[col] == r ? (white[col] ? 'W' : 'B') : '.';
      out += '\n';
    }
    return out;
  }
};

inline Board to_board(const Code& c) {
  Board b;
  for (int i = 0; i < 5; ++i) {
    b.row_of_column[i] = c.entries[i].label;
    b.white[i] = c.entries[i].plus;
  }
  return b;
}

inline Code from_board(const Board& b) {
  if (!b.valid()) throw ValidationError("board is not a rook placement");
  Code c;
  for (int i = 0; i < 5; ++i) c.entries[i] = {b.row_of_column[i], b.white[i]};
  return c;
}

inline Code board_roundtrip(const Code& c) { return from_board(to_board(c)); }

/// Generator actions phrased on the board: b1 moves the fifth column to the
/// front flipping that rook, a1 does the same with rows, a2 and b2 mirror.
inline Board apply(Gen g, const Board& b) {
  Board out = b;
  switch (g) {
    case Gen::b1:
      for (int col = 0; col < 5; ++col) {
        out.row_of_column[(col + 1) % 5] = b.row_of_column[col];
        out.white[(col + 1) % 5] = b.white[col];
      }
      out.white[0] = !out.white[0];
      break;
    case Gen::b1inv:
      for (int col = 0; col < 5; ++col) {
        out.row_of_column[col] = b.row_of_column[(col + 1) % 5];
        out.white[col] = b.white[(col + 1) % 5];
      }
      out.white[4] = !out.white[4];
      break;
    case Gen::b2:
      for (int col = 0; col < 5; ++col) {
        out.row_of_column[col] = b.row_of_column[4 - col];
        out.white[col] = b.white[4 - col];
      }
      break;
    case Gen::a1:
      for (int col = 0; col < 5; ++col) {
        if (b.row_of_column[col] == 5) out.white[col] = !b.white[col];
        out.row_of_column[col] = b.row_of_column[col] % 5 + 1;
      }
      break;
    case Gen::a1inv:
      for (int col = 0; col < 5; ++col) {
        if (b.row_of_column[col] == 1) out.white[col] = !b.white[col];
        out.row_of_column[col] = (b.row_of_column[col] + 3) % 5 + 1;
      }
      break;
    case Gen::a2:
      for (int col = 0; col < 5; ++col) out.row_of_column[col] = 6 - b.row_of_column[col];
      break;
  }
  return out;
}

/// Order of the permutation group that a1, a2, b1, b2 induce on all codes.
inline std::size_t induced_group_order() {
  using Perm = std::vector<std::uint16_t>;
  auto perm_of = [](Gen g) {
    Perm p(Code::count);
    for (int i = 0; i < Code::count; ++i) p[i] = static_cast<std::uint16_t>(apply(g, Code::from_index(i)).index());
    return p;
  };
  std::vector<Perm> gens{perm_of(Gen::a1), perm_of(Gen::a2), perm_of(Gen::b1), perm_of(Gen::b2)};
  Perm id(Code::count);
  for (int i = 0; i < Code::count; ++i) id[i] = static_cast<std::uint16_t>(i);
  std::set<Perm> group{id};
  std::vector<Perm> stack{id};
  while (!stack.empty()) {
    Perm x = stack.back();
    stack.pop_back();
    for (const Perm& g : gens) {
      Perm y(Code::count);
      for (int i = 0; i < Code::count; ++i) y[i] = g[x[i]];
      if (group.insert(y).second) stack.push_back(std::move(y));
    }
  }
  return group.size();
}

}  // namespace tlab

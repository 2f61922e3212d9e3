// Walks one scene through the library: transversal search, Chebyshev line,
// half-plane configuration, its code and class, and the deformation search.
//
//   demo_pipeline [scene.json]
//
// Without an argument it uses five random polygons that admit no transversal.

#include <iostream>

#include "tlab/tlab.hpp"

using namespace tlab;

namespace {

std::vector<Section> default_family() {
  Rng rng(7);
  std::vector<Section> secs;
  double t = 0;
  for (int i = 0; i < 5; ++i) {
    t += rng.quantized(0.5, 2.0);
    const Vec2 c{rng.quantized(-2, 2), rng.quantized(-2, 2)};
    secs.emplace_back(t, random_convex_polygon(rng, c, 0.5, 5));
  }
  return secs;
}

void print_line(const char* label, const LineParam& l) {
  std::cout << label << " x = " << l.a << " t + " << l.b << ", y = " << l.c << " t + " << l.d << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const std::vector<Section> secs = argc > 1 ? parse_scene(argv[1]).sections.sections() : default_family();
    std::cout << secs.size() << " sections\n";

    const TransversalReport tr = find_transversal(secs, true);
    if (tr.feasible) {
      print_line("transversal:", *tr.witness);
      return 0;
    }
    std::cout << "no transversal";
    if (tr.infeasible_subset && tr.infeasible_subset->size() < secs.size()) {
      std::cout << " even for sections";
      for (std::size_t i : *tr.infeasible_subset) std::cout << " " << i;
    }
    std::cout << "\n";
    if (secs.size() != 5) return 0;

    const ChebyshevResult ch = chebyshev_line(secs);
    print_line("Chebyshev line:", ch.line);
    std::cout << "value " << ch.value << ", distance spread " << ch.spread() << "\n";

    const HalfPlaneConfig config = extract_halfplanes(ch, secs);
    if (!config.generic()) {
      std::cout << "half-plane boundaries are parallel; no code\n";
      return 0;
    }
    const Code code = code_from_configuration(config);
    std::cout << "code " << code.str() << ", class " << class_name(canonical_class(code)) << ", representative "
              << canonical_representative(code).str() << "\n";

    const DeformationResult d = find_good_deformation(config);
    std::cout << (d.found ? "good deformation found" : "no good deformation") << " (total slack " << d.total_slack
              << ")\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}

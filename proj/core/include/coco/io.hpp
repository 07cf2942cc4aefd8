#pragma once

// JSON documents for cones, measures and bodies, the solver-solution
// document, and CSV emission for the stability harness.  Parsers validate
// through the owning modules (generators are normalized on load, bodies are
// rebuilt and re-certified), and every malformed or schema-violating input
// surfaces as ValidationError.  Serializers emit a fixed key order and
// shortest round-trip number formatting, so identical values produce
// byte-identical documents.

#include <string>

#include "coco/coconvex.hpp"
#include "coco/cone.hpp"
#include "coco/measures.hpp"
#include "coco/solver.hpp"
#include "coco/stability.hpp"

namespace coco {

// {"dim": 2|3, "generators": [[...], ...]}
std::string cone_to_json(const Cone& c);
Cone cone_from_json(const std::string& text);

// {"atoms": [{"u": [...], "mass": ...}, ...]}; the dimension is inferred
// from the atoms, or taken from expected_dim (2, 3) when the list is empty;
// a conflict between the two is a ValidationError.
std::string measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const std::string& text, int expected_dim = 0);

// {"cone": <cone doc>, "atoms": [{"u": [...], "h": ...}, ...]}; the
// truncation and polytope are derived on load, never serialized.
std::string body_to_json(const CFullSet& k);
CFullSet body_from_json(const std::string& text);

// {"atoms": [{"u", "h", "target_mass", "achieved_mass"}, ...],
//  "residual_inf", "iterations", "converged", "coconvex_volume"};
// atom order follows the target measure.
std::string solution_to_json(const SolveReport& rep, const DiscreteMeasure& target);

// header trial,jitter,lp,dh,ratio; the ratio field is empty when undefined
std::string stability_to_csv(const StabilityReport& rep);

std::string read_text_file(const std::string& path);  // ValidationError on failure
void write_text_file(const std::string& path, const std::string& content);

}  // namespace coco

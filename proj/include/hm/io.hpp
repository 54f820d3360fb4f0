#pragma once
// JSON encodings. Objects are std::map backed, so keys come out sorted; every top-level document
// carries "format": 1.
#include <string>

#include "json.hpp"

#include "hm/corpus.hpp"
#include "hm/model.hpp"
#include "hm/pipeline.hpp"

namespace hm::io {

using json = nlohmann::json;

constexpr int kFormat = 1;

std::string surface_str(const SurfaceSig& s);  // "g,b"

json to_json(const Curve& c);
Curve curve_from_json(const SurfaceSig& s, const json& j);
json to_json(const SubsurfaceId& Y);
SubsurfaceId subsurface_from_json(const SurfaceSig& s, const json& j);
json to_json(const AnnulusArc& a);
AnnulusArc arc_from_json(const Curve& core, const json& j);
json to_json(const Marking& m);
Marking marking_from_json(const SurfaceSig& s, const json& j);

json to_json(const Hierarchy& H);
Hierarchy hierarchy_from_json(const json& j);
json to_json(const Resolution& R, bool slices);
Resolution resolution_from_json(const json& j);
json to_json(const ModelComplex& M);
ModelComplex model_from_json(const SurfaceSig& s, const json& j);
json to_json(const Omega& w);

json corpus_json(const SurfaceSig& s, int walk, uint64_t seed, const std::vector<MarkingPair>& pairs);
std::vector<MarkingPair> corpus_from_json(const json& j, SurfaceSig* s = nullptr);

json to_json(const HierarchyReport& r);
json to_json(const ResolutionReport& r);
json to_json(const ModelReport& r);
json to_json(const Constants& c);

// Graphviz skeleton of the block gluing complex.
std::string to_dot(const ModelComplex& M);

std::string dump(const json& j);  // two-space indent, trailing newline
json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}

#pragma once

#include "circa/isomorphism.hpp"

#include "json.hpp"

namespace circa::io {

using json = nlohmann::json;

json to_json(const Graph& g);
Graph graph_from_json(const json& j);

json to_json(const ArcModel& psi, const std::function<std::string(int)>& name);
ArcModel arc_model_from_json(const json& j, std::vector<std::string>* names = nullptr);

/// Words as lists of "name^e" tokens; node placeholders render as "[node]".
json to_json(const Word& w, const std::function<std::string(int)>& name);
Word word_from_json(const json& j, const std::function<int(const std::string&)>& id_of);

json to_json(const Structure& s, const Graph& g);

json to_json(const MDTree& t, const Graph& g);
MDTree md_tree_from_json(const json& j, const std::function<int(const std::string&)>& id_of, int n);

json to_json(const SlotOrder& so, const Graph& g);
json to_json(const TNMTree& t, const Graph& g);

json to_json(const IsoResult& r, const Graph& g, const Graph& h);

}  // namespace circa::io

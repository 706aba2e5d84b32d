// Copyright 2026 The genalpha Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include "genalpha/error.hpp"
#include "genalpha/geometry.hpp"
#include "json.hpp"

namespace genalpha::geometry {

using json = nlohmann::json;

Geometry geometry_from_json(const std::string& text) {
  Geometry g;
  try {
    const json doc = json::parse(text);
    g.name = doc.value("name", std::string("custom"));
    for (const auto& jp : doc.at("patches")) {
      const auto degrees = jp.at("degrees").get<std::vector<int>>();
      const auto knots = jp.at("knots").get<std::vector<std::vector<double>>>();
      if (degrees.size() != knots.size()) throw ConfigError("patch: degrees and knots lengths differ");
      std::vector<splines::KnotVector> dirs;
      for (std::size_t k = 0; k < degrees.size(); ++k) dirs.emplace_back(degrees[k], knots[k]);
      splines::SplineSpace space(std::move(dirs));
      std::vector<Point> cps;
      for (const auto& c : jp.at("control_points")) {
        const auto v = c.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != space.dim()) {
          throw ConfigError("control point has " + std::to_string(v.size()) + " coordinates, expected " +
                            std::to_string(space.dim()));
        }
        Point p{0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i];
        cps.push_back(p);
      }
      g.patches.emplace_back(std::move(space), std::move(cps), jp.value("singular", false));
    }
    if (doc.contains("interfaces")) {
      for (const auto& ji : doc.at("interfaces")) {
        g.interfaces.push_back({ji.at("patch_a").get<int>(), ji.at("face_a").get<int>(), ji.at("patch_b").get<int>(),
                                ji.at("face_b").get<int>(), ji.value("orientation", 0)});
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("geometry document: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("geometry document: ") + e.what());
  }
  return g;
}

std::string geometry_to_json(const Geometry& g) {
  json doc;
  doc["name"] = g.name;
  doc["patches"] = json::array();
  for (const auto& p : g.patches) {
    json jp;
    std::vector<int> degrees;
    std::vector<std::vector<double>> knots;
    for (const auto& kv : p.space().directions()) {
      degrees.push_back(kv.degree());
      knots.emplace_back(kv.knots().begin(), kv.knots().end());
    }
    jp["degrees"] = degrees;
    jp["knots"] = knots;
    jp["control_points"] = json::array();
    for (const auto& c : p.control_points()) {
      jp["control_points"].push_back(std::vector<double>(c.begin(), c.begin() + p.dim()));
    }
    jp["singular"] = p.singular();
    doc["patches"].push_back(jp);
  }
  doc["interfaces"] = json::array();
  for (const auto& f : g.interfaces) {
    doc["interfaces"].push_back({{"patch_a", f.patch_a},
                                 {"face_a", f.face_a},
                                 {"patch_b", f.patch_b},
                                 {"face_b", f.face_b},
                                 {"orientation", f.orientation}});
  }
  return doc.dump(2);
}

Geometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open geometry file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return geometry_from_json(ss.str());
}

void save_geometry(const Geometry& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write geometry file '" + path + "'");
  out << geometry_to_json(g) << '\n';
}

}  // namespace genalpha::geometry

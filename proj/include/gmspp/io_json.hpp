#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gmspp/instance.hpp"
#include "gmspp/solution.hpp"
#include "gmspp/ycheck.hpp"

namespace gmspp {

using json = nlohmann::json;

inline json instance_to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  j["items"] = json::array();
  for (const Item& it : inst.items) j["items"].push_back({{"w", it.w}, {"h", it.h}});
  j["strips"] = json::array();
  for (const Strip& s : inst.strips)
    j["strips"].push_back({{"W", s.W}, {"C", format_rational(s.C)}});
  return j;
}

inline Instance instance_from_json(const json& j) {
  Instance inst;
  try {
    inst.name = j.at("name").get<std::string>();
    for (const json& e : j.at("items"))
      inst.items.push_back({e.at("w").get<int>(), e.at("h").get<int>()});
    for (const json& e : j.at("strips")) {
      Strip s;
      s.W = e.at("W").get<int>();
      s.C = parse_rational(e.at("C").get<std::string>());
      inst.strips.push_back(s);
    }
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad instance json: ") + ex.what());
  }
  validate_instance(inst);
  return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

inline json packing_to_json(const Instance& inst, const Packing& pack) {
  json j;
  j["objective"] = format_rational(packing_objective(inst, pack));
  j["strips"] = json::array();
  for (const StripPacking& sp : pack.strips) {
    json js;
    js["i"] = sp.strip;
    js["H"] = sp.H;
    js["items"] = json::array();
    for (const PackedItem& a : sp.items)
      js["items"].push_back({{"j", a.j}, {"x", a.x}, {"y", a.y}});
    j["strips"].push_back(js);
  }
  return j;
}

inline Packing packing_from_json(const json& j) {
  Packing pack;
  try {
    for (const json& js : j.at("strips")) {
      StripPacking sp;
      sp.strip = js.at("i").get<int>();
      sp.H = js.at("H").get<int>();
      for (const json& ja : js.at("items"))
        sp.items.push_back(
            {ja.at("j").get<int>(), ja.at("x").get<int>(), ja.at("y").get<int>()});
      pack.strips.push_back(sp);
    }
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad packing json: ") + ex.what());
  }
  return pack;
}

inline json ycheck_to_json(const YCheckInstance& yc) {
  json j;
  j["W"] = yc.W;
  j["H"] = yc.Hbar;
  j["items"] = json::array();
  for (const PlacedItem& it : yc.items)
    j["items"].push_back({{"j", it.j}, {"p", it.p}, {"w", it.w}, {"h", it.h}});
  return j;
}

inline YCheckInstance ycheck_from_json(const json& j) {
  YCheckInstance yc;
  try {
    yc.W = j.at("W").get<int>();
    yc.Hbar = j.at("H").get<int>();
    for (const json& ja : j.at("items"))
      yc.items.push_back({ja.at("j").get<int>(), ja.at("p").get<int>(),
                          ja.at("w").get<int>(), ja.at("h").get<int>()});
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad placement json: ") + ex.what());
  }
  return yc;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ParseError(path + ": " + ex.what());
  }
  return instance_from_json(j);
}

}  // namespace gmspp

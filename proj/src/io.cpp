#include "belowz/io.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace belowz {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidInput((where.empty() ? std::string("/") : where) + ": " + what);
}

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(where, "unknown key '" + key + "'");
  }
}

const Json& field(const Json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key '") + key + "'");
  return *it;
}

Integer as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<Integer>();
}

std::size_t as_index(const Json& j, const std::string& where, std::size_t size) {
  Integer v = as_int(j, where);
  if (v < 0 || static_cast<std::size_t>(v) >= size) fail(where, "index " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

ExponentVector as_vector(const Json& j, const std::string& where, std::optional<Index> dim = std::nullopt) {
  if (!j.is_array()) fail(where, "expected an integer array");
  if (dim && static_cast<Index>(j.size()) != *dim) fail(where, "expected " + std::to_string(*dim) + " entries");
  ExponentVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = as_int(j[i], where + "/" + std::to_string(i));
  return v;
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string label_of(const Json& j, const std::string& where) {
  auto it = j.find("label");
  if (it == j.end()) return {};
  if (!it->is_string()) fail(where + "/label", "expected a string");
  return it->get<std::string>();
}

MonoidPtr monoid_at(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return builtin_monoid(j.get<std::string>());
    } catch (const InvalidInput& e) {
      fail(where, e.what());
    }
  }
  if (!j.is_object()) fail(where, "expected a built-in name or an object");
  const Json& kind = field(j, where, "kind");
  if (!kind.is_string()) fail(where + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  std::string label = label_of(j, where);
  try {
    if (k == "affine") {
      check_keys(j, where, {"kind", "label", "dim", "gens", "inverted"});
      Integer d = as_int(field(j, where, "dim"), where + "/dim");
      if (d < 0) fail(where + "/dim", "must be non-negative");
      std::vector<ExponentVector> gens;
      const Json& g = as_array(field(j, where, "gens"), where + "/gens");
      for (std::size_t i = 0; i < g.size(); ++i)
        gens.push_back(as_vector(g[i], where + "/gens/" + std::to_string(i), static_cast<Index>(d)));
      std::vector<std::size_t> inv;
      if (j.contains("inverted")) {
        const Json& a = as_array(j["inverted"], where + "/inverted");
        for (std::size_t i = 0; i < a.size(); ++i)
          inv.push_back(as_index(a[i], where + "/inverted/" + std::to_string(i), gens.size()));
      }
      return make_monoid(AffineMonoid(static_cast<Index>(d), gens, inv), label);
    }
    if (k == "finite") {
      check_keys(j, where, {"kind", "label", "elements", "unit", "table"});
      const Json& e = as_array(field(j, where, "elements"), where + "/elements");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i].is_string()) fail(where + "/elements/" + std::to_string(i), "expected a string");
        names.push_back(e[i].get<std::string>());
      }
      if (names.empty()) fail(where + "/elements", "a monoid has at least one element");
      std::size_t unit = as_index(field(j, where, "unit"), where + "/unit", names.size());
      const Json& t = as_array(field(j, where, "table"), where + "/table");
      if (t.size() != names.size()) fail(where + "/table", "expected one row per element");
      FiniteMonoid::Table table;
      for (std::size_t r = 0; r < t.size(); ++r) {
        std::string w = where + "/table/" + std::to_string(r);
        const Json& row = as_array(t[r], w);
        if (row.size() != names.size()) fail(w, "expected one entry per element");
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < row.size(); ++c) out.push_back(as_index(row[c], w + "/" + std::to_string(c), names.size()));
        table.push_back(std::move(out));
      }
      return make_monoid(FiniteMonoid(names, table, unit), label);
    }
    if (k == "fp") {
      check_keys(j, where, {"kind", "label", "ngens", "relations"});
      Integer n = as_int(field(j, where, "ngens"), where + "/ngens");
      if (n < 0) fail(where + "/ngens", "must be non-negative");
      std::vector<FPMonoid::Relation> rels;
      if (j.contains("relations")) {
        const Json& r = as_array(j["relations"], where + "/relations");
        for (std::size_t i = 0; i < r.size(); ++i) {
          std::string w = where + "/relations/" + std::to_string(i);
          if (!r[i].is_array() || r[i].size() != 2) fail(w, "expected a pair of exponent vectors");
          rels.emplace_back(as_vector(r[i][0], w + "/0", static_cast<Index>(n)),
                            as_vector(r[i][1], w + "/1", static_cast<Index>(n)));
        }
      }
      return make_monoid(FPMonoid(static_cast<std::size_t>(n), rels), label);
    }
  } catch (const InvalidInput& e) {
    std::string msg = e.what();
    if (msg.rfind(where.empty() ? "/" : where, 0) == 0) throw;
    fail(where, msg);
  }
  fail(where + "/kind", "unknown kind '" + k + "'");
}

std::size_t element_index(const Json& j, const FiniteMonoid& m, const std::string& where) {
  if (j.is_string()) {
    auto i = m.index_of(j.get<std::string>());
    if (!i) fail(where, "no element named '" + j.get<std::string>() + "'");
    return *i;
  }
  return as_index(j, where, m.size());
}

Json element_json(const Monoid& m, const Element& e) {
  if (m.is_finite()) return m.finite().name(std::get<FiniteIndex>(e));
  return to_json(std::get<ExponentVector>(e));
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    std::smatch m;
    static const std::regex tail("column [0-9]+: (.*)$");
    if (std::regex_search(msg, m, tail)) msg = m[1];
    throw InvalidInput(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

MonoidPtr monoid_from_json(const Json& j) { return monoid_at(j, ""); }

MonoidPtr parse_monoid_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return monoid_from_json(parse_json(spec, "<monoid spec>"));
  try {
    return builtin_monoid(spec);
  } catch (const InvalidInput&) {
    if (!std::filesystem::is_regular_file(spec)) throw;
  }
  return monoid_from_json(read_json_file(spec));
}

Fan fan_from_json(const Json& j) {
  check_keys(j, "", {"dim", "rays", "cones", "label"});
  Integer d = as_int(field(j, "", "dim"), "/dim");
  if (d < 1) fail("/dim", "must be positive");
  std::vector<ExponentVector> rays;
  const Json& r = as_array(field(j, "", "rays"), "/rays");
  for (std::size_t i = 0; i < r.size(); ++i) {
    rays.push_back(as_vector(r[i], "/rays/" + std::to_string(i), static_cast<Index>(d)));
    if (is_zero(rays.back())) fail("/rays/" + std::to_string(i), "a ray must be non-zero");
  }
  std::vector<std::vector<std::size_t>> cones;
  const Json& c = as_array(field(j, "", "cones"), "/cones");
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::string w = "/cones/" + std::to_string(i);
    const Json& idx = as_array(c[i], w);
    std::vector<std::size_t> cone;
    for (std::size_t k = 0; k < idx.size(); ++k) cone.push_back(as_index(idx[k], w + "/" + std::to_string(k), rays.size()));
    cones.push_back(std::move(cone));
  }
  return complete_fan(static_cast<Index>(d), rays, cones);
}

Cover cover_from_json(const Json& j) {
  check_keys(j, "", {"base", "legs", "label"});
  MonoidPtr base = monoid_at(field(j, "", "base"), "/base");
  if (!base->is_finite()) fail("/base", "the base of a cover must be finite");
  const Json& l = as_array(field(j, "", "legs"), "/legs");
  if (l.empty()) fail("/legs", "a cover needs at least one leg");
  std::vector<MonoidHom> legs;
  for (std::size_t i = 0; i < l.size(); ++i) {
    std::string w = "/legs/" + std::to_string(i);
    check_keys(l[i], w, {"target", "images"});
    MonoidPtr target = monoid_at(field(l[i], w, "target"), w + "/target");
    if (!target->is_finite()) fail(w + "/target", "leg targets must be finite");
    const Json& im = as_array(field(l[i], w, "images"), w + "/images");
    if (im.size() != base->finite().size()) fail(w + "/images", "expected one image per base element");
    std::vector<Element> images;
    for (std::size_t k = 0; k < im.size(); ++k)
      images.emplace_back(FiniteIndex{element_index(im[k], target->finite(), w + "/images/" + std::to_string(k))});
    try {
      legs.emplace_back(base, target, std::move(images));
    } catch (const InvalidInput& e) {
      fail(w, e.what());
    }
  }
  return Cover(base, std::move(legs));
}

// ---------------------------------------------------------------- writers

Json to_json(const ExponentVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Monoid& m) {
  Json j;
  if (!m.label().empty()) j["label"] = m.label();
  switch (m.kind()) {
    case Monoid::Kind::Affine: {
      const auto& a = m.affine();
      j["kind"] = "affine";
      j["dim"] = a.dim();
      j["gens"] = Json::array();
      for (const auto& g : a.gens()) j["gens"].push_back(to_json(g));
      j["inverted"] = a.inverted();
      break;
    }
    case Monoid::Kind::Finite: {
      const auto& f = m.finite();
      j["kind"] = "finite";
      j["elements"] = f.names();
      j["unit"] = f.unit();
      j["table"] = f.table();
      break;
    }
    case Monoid::Kind::FinitelyPresented: {
      const auto& f = m.fp();
      j["kind"] = "fp";
      j["ngens"] = f.num_gens();
      j["relations"] = Json::array();
      for (const auto& [l, r] : f.relations()) j["relations"].push_back({to_json(l), to_json(r)});
      break;
    }
  }
  return j;
}

Json to_json(const Fan& f) {
  Json j;
  j["dim"] = f.dim;
  j["rays"] = Json::array();
  for (const auto& r : f.rays) j["rays"].push_back(to_json(r));
  j["cones"] = f.cones;
  return j;
}

Json to_json(const FanVerdict& v) {
  Json j;
  j["valid"] = v.valid;
  if (!v.valid) {
    j["failure"] = v.failure;
    j["cones"] = v.cones;
    if (v.witness_ray) j["witness"] = to_json(*v.witness_ray);
  }
  return j;
}

Json to_json(const MonoidHom& f) {
  Json j;
  j["images"] = Json::array();
  for (const auto& e : f.images()) j["images"].push_back(element_json(f.target(), e));
  Json c;
  c["kind"] = to_string(f.certificate().kind);
  c["inverted"] = Json::array();
  for (const auto& e : f.certificate().inverted) c["inverted"].push_back(element_json(f.source(), e));
  j["certificate"] = c;
  return j;
}

Json to_json(const SchemeAtlas& x) {
  Json j;
  j["base"] = to_string(x.base);
  j["charts"] = Json::array();
  for (const auto& c : x.charts) {
    Json cj;
    cj["label"] = c.label;
    cj["monoid"] = to_json(*c.monoid);
    if (c.cone) {
      cj["cone"] = Json::array();
      for (const auto& r : c.cone->rays()) cj["cone"].push_back(to_json(r));
    }
    j["charts"].push_back(cj);
  }
  j["overlaps"] = Json::array();
  for (const auto& o : x.overlaps) {
    Json oj;
    oj["i"] = o.i;
    oj["j"] = o.j;
    oj["monoid"] = to_json(*o.monoid);
    oj["left"] = to_json(o.left);
    oj["right"] = to_json(o.right);
    j["overlaps"].push_back(oj);
  }
  return j;
}

Json to_json(const AtlasVerdict& v) {
  Json j;
  j["valid"] = v.valid;
  j["conditions"] = Json::array();
  for (const auto& c : v.conditions) j["conditions"].push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

Json to_json(const PointSet& p) {
  Json j;
  j["size"] = p.size();
  j["points"] = Json::array();
  for (const auto& pt : p.points) {
    const MonoidHom& h = p.chart_points[pt.chart][pt.index];
    Json images = Json::array();
    for (const auto& e : h.images()) images.push_back(element_json(h.target(), e));
    j["points"].push_back({{"chart", pt.chart}, {"images", images}, {"members", pt.members}});
  }
  return j;
}

Json to_json(const PointCount& c) {
  return {{"q", c.q}, {"glued", c.glued}, {"cone_sum", c.cone_sum}, {"agree", c.agree()}};
}

Json to_json(const GroupPoints& g, bool with_elements) {
  Json j;
  j["label"] = g.label();
  j["order"] = g.size();
  j["abelian"] = g.is_abelian();
  j["axioms"] = g.check_axioms().ok;
  if (with_elements) {
    j["elements"] = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i) j["elements"].push_back(g.name(i));
  }
  return j;
}

Json to_json(const FiniteASet& s) {
  Json j;
  j["size"] = s.size();
  Json act = Json::object();
  for (std::size_t g : s.monoid().generators()) act[s.monoid().name(g)] = s.table()[g];
  j["action"] = act;
  return j;
}

Json to_json(const Cover& c) {
  Json j;
  j["base"] = to_json(*c.base);
  j["legs"] = Json::array();
  for (const auto& f : c.legs) {
    Json images = Json::array();
    for (const auto& e : f.images()) images.push_back(element_json(f.target(), e));
    j["legs"].push_back({{"target", to_json(f.target())}, {"images", images}});
  }
  return j;
}

Json to_json(const LabVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"bound", v.bound}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

Json to_json(const DescentDatum& d) {
  Json j;
  j["pieces"] = Json::array();
  for (const auto& p : d.pieces) j["pieces"].push_back(to_json(p));
  j["glue"] = d.glue;
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace belowz

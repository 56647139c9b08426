#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "toricfol/error.hpp"
#include "toricfol/text.hpp"

namespace toricfol::cli {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ParseError(where, what); }

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key \"") + key + "\"");
  return *it;
}

long long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long long>();
}

std::size_t one_based(const Json& j, const std::string& where) {
  const long long v = integer(j, where);
  if (v < 1) bad(where, "indices are 1-based");
  return static_cast<std::size_t>(v - 1);
}

Rational rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (!j.is_string()) bad(where, "expected a rational as integer or \"p/q\" string");
  Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0) bad(where, "malformed rational \"" + j.get<std::string>() + "\"");
  if (q.get_den() == 0) bad(where, "zero denominator");
  q.canonicalize();
  return q;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }
std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

}  // namespace

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json Inputs::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  digests_[path.lexically_normal().string()] = fnv1a64(bytes);
  try {
    return Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    bad(path.string() + ":byte " + std::to_string(e.byte), "malformed JSON");
  }
}

Fan fan_from_json(const Json& j, const std::string& where) {
  const long long dim = integer(member(j, "dim", where), at(where, "dim"));
  if (dim < 0) bad(at(where, "dim"), "negative dimension");
  std::vector<IntVector> rays;
  const Json& jr = array(member(j, "rays", where), at(where, "rays"));
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string w = at(at(where, "rays"), i);
    IntVector v;
    for (std::size_t k = 0; k < array(jr[i], w).size(); ++k) v.push_back(Integer(std::to_string(integer(jr[i][k], at(w, k)))));
    if (v.size() != static_cast<std::size_t>(dim)) bad(w, "ray length differs from dim");
    rays.push_back(std::move(v));
  }
  std::vector<RaySet> cones;
  const Json& jc = array(member(j, "max_cones", where), at(where, "max_cones"));
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string w = at(at(where, "max_cones"), i);
    RaySet c;
    for (std::size_t k = 0; k < array(jc[i], w).size(); ++k) c.push_back(one_based(jc[i][k], at(w, k)));
    cones.push_back(std::move(c));
  }
  return Fan(static_cast<std::size_t>(dim), std::move(rays), std::move(cones));
}

Json fan_to_json(const Fan& fan) {
  Json rays = Json::array(), cones = Json::array();
  for (const auto& r : fan.rays()) {
    Json v = Json::array();
    for (const auto& x : r) v.push_back(x.get_si());
    rays.push_back(v);
  }
  for (const auto& c : fan.max_cones()) cones.push_back(indices_json(c));
  return {{"dim", fan.dim()}, {"rays", rays}, {"max_cones", cones}};
}

Fan fan_reference(Inputs& in, const Json& ref, const std::filesystem::path& base, const std::string& where) {
  if (ref.is_string()) {
    const std::filesystem::path p = base / ref.get<std::string>();
    return fan_from_json(in.load(p), p.string() + ":");
  }
  return fan_from_json(ref, where);
}

FoliationFile foliation_from_json(Inputs& in, const Json& j, const std::filesystem::path& base, const std::string& where,
                                  const Fan* fan) {
  FoliationFile out;
  if (fan) out.fan = *fan;
  else out.fan = fan_reference(in, member(j, "fan", where), base, at(where, "fan"));
  require_smooth_complete(out.fan);
  out.dd = grading(out.fan);
  const std::size_t N = out.dd.nvars();
  const Json& jf = array(member(j, "fields", where), at(where, "fields"));
  for (std::size_t i = 0; i < jf.size(); ++i) {
    const std::string w = at(at(where, "fields"), i);
    const Json& comps = array(member(jf[i], "components", w), at(w, "components"));
    if (comps.size() != N) bad(at(w, "components"), "expected " + std::to_string(N) + " components");
    std::vector<Polynomial> c;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const std::string wk = at(at(w, "components"), k);
      if (!comps[k].is_string()) bad(wk, "expected a polynomial string");
      try {
        c.push_back(parse_polynomial(comps[k].get<std::string>(), N));
      } catch (const ParseError& e) {
        const std::string msg = e.what();
        bad(wk + " " + e.location(), msg.substr(std::min(msg.size(), e.location().size() + 2)));
      }
    }
    std::optional<MultiDegree> declared;
    if (jf[i].contains("degree")) {
      const std::string wd = at(w, "degree");
      const Json& d = array(jf[i]["degree"], wd);
      if (d.size() != out.dd.s()) bad(wd, "expected " + std::to_string(out.dd.s()) + " entries");
      MultiDegree m(out.dd.s());
      for (std::size_t t = 0; t < d.size(); ++t) m[t] = integer(d[t], at(wd, t));
      declared = m;
    }
    out.fields.push_back(VectorField::graded(out.dd, std::move(c), declared));
  }
  return out;
}

ProjectionFile projection_from_json(Inputs& in, const Json& j, const std::filesystem::path& base, const std::string& where) {
  ProjectionFile out;
  out.fan = fan_reference(in, member(j, "fan", where), base, at(where, "fan"));
  require_smooth_complete(out.fan);
  out.dd = grading(out.fan);
  const Json& js = array(member(j, "S", where), at(where, "S"));
  for (std::size_t i = 0; i < js.size(); ++i) out.S.push_back(one_based(js[i], at(at(where, "S"), i)));
  if (j.contains("operators")) {
    const std::string wo = at(where, "operators");
    if (!j["operators"].is_object()) bad(wo, "expected an object keyed by divisor index");
    for (const auto& [key, terms] : j["operators"].items()) {
      const std::string wk = at(wo, key);
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        const long v = std::stol(key, &used);
        if (used != key.size() || v < 1) throw std::invalid_argument(key);
        idx = static_cast<std::size_t>(v - 1);
      } catch (const std::logic_error&) {
        bad(wk, "operator keys are 1-based divisor indices");
      }
      LinearForm f;
      for (std::size_t t = 0; t < array(terms, wk).size(); ++t) {
        const std::string wt = at(wk, t);
        const Json& pair = array(terms[t], wt);
        if (pair.size() != 2) bad(wt, "expected [variable, coefficient]");
        f.emplace_back(one_based(pair[0], at(wt, 0)), rational(pair[1], at(wt, 1)));
      }
      out.operators[idx] = std::move(f);
    }
  }
  return out;
}

MultiDegree parse_degree(const std::string& text, std::size_t s) {
  MultiDegree d(s);
  std::stringstream ss(text);
  std::string part;
  std::size_t t = 0;
  while (std::getline(ss, part, ',')) {
    if (t >= s) bad("degree", "expected " + std::to_string(s) + " entries");
    try {
      std::size_t used = 0;
      d[t] = std::stoll(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      bad("degree entry " + std::to_string(t + 1), "not an integer: \"" + part + "\"");
    }
    ++t;
  }
  if (t != s) bad("degree", "expected " + std::to_string(s) + " entries");
  return d;
}

RaySet parse_indices(const std::string& text) {
  RaySet out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(part, &used);
      if (used != part.size() || v < 1) throw std::invalid_argument(part);
      out.push_back(static_cast<std::size_t>(v - 1));
    } catch (const std::logic_error&) {
      bad("index list", "expected 1-based indices, got \"" + part + "\"");
    }
  }
  return out;
}

namespace {

Rational parse_rational(const std::string& s, const std::string& where) {
  if (s.empty()) bad(where, "empty number");
  Rational q;
  std::string body = s[0] == '+' ? s.substr(1) : s;
  if (body.empty() || q.set_str(body, 10) != 0 || q.get_den() == 0) bad(where, "malformed rational \"" + s + "\"");
  q.canonicalize();
  return q;
}

// "b*i", "i", "-i", "b"
GaussianRational parse_summand(const std::string& s, const std::string& where) {
  if (!s.empty() && s.back() == 'i') {
    std::string c = s.substr(0, s.size() - 1);
    if (!c.empty() && c.back() == '*') c.pop_back();
    if (c.empty() || c == "+") return {0, 1};
    if (c == "-") return {0, -1};
    return {0, parse_rational(c, where)};
  }
  return {parse_rational(s, where), 0};
}

}  // namespace

std::vector<GaussianRational> parse_point(const std::string& text) {
  std::vector<GaussianRational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const std::string where = "point coordinate " + std::to_string(out.size() + 1);
    // split at a sign that is not leading and not after '/'
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < part.size(); ++k)
      if ((part[k] == '+' || part[k] == '-') && part[k - 1] != '/') split = k;
    GaussianRational z = parse_summand(split == std::string::npos ? part : part.substr(0, split), where);
    if (split != std::string::npos) {
      GaussianRational w = parse_summand(part.substr(split), where);
      z.re += w.re;
      z.im += w.im;
    }
    out.push_back(z);
  }
  return out;
}

Json degree_json(const MultiDegree& d) { return d.values(); }

Json indices_json(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

Json field_json(const VectorField& y) {
  Json comps = Json::array();
  for (const auto& c : y.components()) comps.push_back(to_string(c));
  Json out = {{"components", comps}};
  if (y.degree()) out["degree"] = degree_json(*y.degree());
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_si());
    out.push_back(row);
  }
  return out;
}

Json rational_json(const Rational& q) { return to_string(q); }

}  // namespace toricfol::cli

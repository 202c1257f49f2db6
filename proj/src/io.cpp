#include "lienard/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lienard/errors.hpp"

namespace lienard::io {

using funcs::FnKind;
using funcs::LienardSystem;
using funcs::Polynomial;
using funcs::ScalarFn;

Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (double c : p.coeffs()) a.push_back(c);
  if (a.empty()) a.push_back(0.0);
  return a;
}

Json to_json(const ScalarFn& fn) {
  switch (fn.kind()) {
    case FnKind::Poly:
      return {{"poly", to_json(fn.polynomial())}};
    case FnKind::NegHalfFactor:
      return {{"neg_factor", {{"lambda", fn.parameter()}, {"base", to_json(fn.base())}}}};
    case FnKind::NegHalfArgScale:
      return {{"neg_argscale", {{"lambda", fn.parameter()}, {"base", to_json(fn.base())}}}};
    case FnKind::SubtractConst:
      return {{"sub_const", {{"c", fn.parameter()}, {"base", to_json(fn.base())}}}};
    case FnKind::SubtractLinear:
      return {{"sub_linear", {{"c", fn.parameter()}, {"base", to_json(fn.base())}}}};
  }
  throw InputError("unknown function kind");
}

namespace {

double number(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number())
    throw InputError(where + ": missing numeric field \"" + key + "\"");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw InputError(where + ": \"" + key + "\" is not finite");
  return v;
}

const Json& base_of(const Json& body, const std::string& where) {
  if (!body.is_object() || !body.contains("base")) throw InputError(where + ": missing \"base\"");
  return body.at("base");
}

}  // namespace

ScalarFn scalar_fn_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1)
    throw InputError("a function must be an object with exactly one of poly, neg_factor, neg_argscale, "
                     "sub_const, sub_linear");
  const auto& [key, body] = *j.items().begin();
  if (key == "poly") {
    if (!body.is_array()) throw InputError("poly: expected an array of coefficients");
    std::vector<double> c;
    for (const auto& v : body) {
      if (!v.is_number()) throw InputError("poly: coefficients must be numbers");
      c.push_back(v.get<double>());
      if (!std::isfinite(c.back())) throw InputError("poly: coefficients must be finite");
    }
    return ScalarFn::poly(Polynomial(std::move(c)));
  }
  try {
    if (key == "neg_factor")
      return ScalarFn::neg_half_factor(scalar_fn_from_json(base_of(body, key)), number(body, "lambda", key));
    if (key == "neg_argscale")
      return ScalarFn::neg_half_arg_scale(scalar_fn_from_json(base_of(body, key)), number(body, "lambda", key));
    if (key == "sub_const") return ScalarFn::subtract_const(scalar_fn_from_json(base_of(body, key)), number(body, "c", key));
    if (key == "sub_linear")
      return ScalarFn::subtract_linear(scalar_fn_from_json(base_of(body, key)), number(body, "c", key));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(key + ": " + e.what());
  }
  throw InputError("unknown function kind \"" + key + "\"");
}

Json to_json(const LienardSystem& sys) {
  Json j;
  if (sys.friction_given())
    j["f"] = to_json(sys.f());
  else
    j["F"] = to_json(sys.F());
  j["g"] = to_json(sys.g());
  return j;
}

LienardSystem system_from_json(const Json& j) {
  if (j.is_object() && j.contains("system")) return system_from_json(j.at("system"));
  if (!j.is_object() || !j.contains("g")) throw InputError("system: expected an object with \"g\" and \"f\" or \"F\"");
  const bool has_f = j.contains("f"), has_F = j.contains("F");
  if (has_f == has_F) throw InputError("system: give exactly one of \"f\" and \"F\"");
  const ScalarFn g = scalar_fn_from_json(j.at("g"));
  return has_f ? LienardSystem::from_friction(scalar_fn_from_json(j.at("f")), g)
               : LienardSystem::from_primitive(scalar_fn_from_json(j.at("F")), g);
}

Json to_json(const roots::RootInterval& r) {
  return {{"lo", r.lo}, {"hi", r.hi}, {"transversal", r.transversal}};
}

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json prime_json(const hypo::PrimeResult& p) {
  return {{"status", hypo::to_string(p.status)},
          {"witness", optional_number(p.witness)},
          {"extremum", p.extremum},
          {"threshold", p.threshold}};
}

}  // namespace

Json to_json(const hypo::HypothesisReport& rep) {
  Json zeros = Json::array();
  for (const auto& z : rep.C.zeros) zeros.push_back(to_json(z));
  Json j;
  j["B"] = {{"status", hypo::to_string(rep.B.status)}, {"reason", rep.B.reason}};
  j["C"] = {{"status", hypo::to_string(rep.C.status)},
            {"reason", rep.C.reason},
            {"x2", rep.C.x2 ? to_json(*rep.C.x2) : Json(nullptr)},
            {"x1", rep.C.x1 ? to_json(*rep.C.x1) : Json(nullptr)},
            {"zeros", zeros}};
  j["D"] = {{"status", hypo::to_string(rep.D.status)},
            {"gap", rep.D.gap},
            {"uncertainty", rep.D.uncertainty},
            {"G_x1", rep.D.G_x1},
            {"G_x2", rep.D.G_x2},
            {"tol", rep.D.tol}};
  j["E"] = {{"status", hypo::to_string(rep.E.status)}, {"reason", rep.E.reason}};
  j["Dprime"] = prime_json(rep.Dprime);
  j["Ddoubleprime"] = prime_json(rep.Ddoubleprime);
  j["verdict"] = hypo::to_string(rep.verdict);
  j["must_cross"] = hypo::to_string(rep.must_cross);
  j["existence_expected"] = rep.existence_expected;
  j["notes"] = rep.notes;
  return j;
}

Json to_json(const cycles::CycleRecord& c) {
  auto flag = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
  return {{"x_fixed", c.x_fixed},
          {"period", c.period},
          {"stability", cycles::to_string(c.stability)},
          {"map_derivative", c.map_derivative},
          {"residual", c.residual},
          {"x_min", c.x_min},
          {"x_max", c.x_max},
          {"crosses_x1", flag(c.crosses_x1)},
          {"crosses_x2", flag(c.crosses_x2)},
          {"integral_g", c.integral_g},
          {"integral_gF", c.integral_gF}};
}

Json to_json(const cycles::CrossingCounts& c) {
  return {{"total", c.total},
          {"both", c.both},
          {"only_x1", c.only_x1},
          {"only_x2", c.only_x2},
          {"neither", c.neither}};
}

Json to_json(const deform::DeformOutcome& out) {
  return {{"kind", out.kind},
          {"parameter", out.parameter},
          {"mu", optional_number(out.mu)},
          {"x2_star", optional_number(out.x2_star)},
          {"lambda_bar", optional_number(out.lambda_bar)},
          {"system", to_json(out.system)},
          {"certificate", to_json(out.certificate)}};
}

Json to_json(const avg::Prediction& p) {
  Json cyc = Json::array();
  for (const auto& c : p.cycles)
    cyc.push_back({{"radius", c.radius}, {"fbar_slope", c.fbar_slope}, {"stable_hint", c.stable_hint}});
  return {{"fbar", to_json(p.fbar)}, {"degenerate", p.degenerate}, {"cycles", cyc}};
}

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep doubles recognisable as floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write(os, v, depth + 1);
      }
      os << '\n' << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], depth + 1);
      }
      os << '\n' << close << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

LienardSystem load_system(const std::filesystem::path& path) { return system_from_json(read_json(path)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

std::string trajectory_csv(const std::vector<ode::State>& samples) {
  std::ostringstream os;
  os << "t,x,y\n";
  char buf[96];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.t, s.x, s.y);
    os << buf;
  }
  return os.str();
}

}  // namespace lienard::io

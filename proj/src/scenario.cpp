#include "pseudoroll/scenario.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pseudoroll/expression.hpp"

namespace pseudoroll {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

VectorXd vector_from(const json& j, const std::string& path,
                     const std::string& where) {
  if (!j.is_array() || j.empty()) fail(path, where + " must be a nonempty array");
  VectorXd v(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(path, where + " must contain numbers only");
    v(Eigen::Index(i)) = j[i].get<double>();
  }
  return v;
}

std::vector<VectorXd> vector_list_from(const json& j, const std::string& path,
                                       const std::string& where) {
  if (!j.is_array() || j.empty())
    fail(path, where + " must be a nonempty array of vectors");
  std::vector<VectorXd> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(vector_from(j[i], path,
                              where + "[" + std::to_string(i) + "]"));
  return out;
}

double number_from(const json& j, const std::string& path,
                   const std::string& where) {
  if (!j.is_number()) fail(path, where + " must be a number");
  return j.get<double>();
}

Control control_from(const json& j, int n, const std::string& path) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail(path, "control must be an object with a 'type' string");
  const std::string type = j["type"].get<std::string>();

  if (type == "constant") {
    if (!j.contains("value")) fail(path, "constant control needs 'value'");
    VectorXd u = vector_from(j["value"], path, "control.value");
    if (u.size() != n) fail(path, "control.value has the wrong dimension");
    return Control::constant(std::move(u));
  }

  if (type == "sampled") {
    if (!j.contains("times") || !j.contains("values"))
      fail(path, "sampled control needs 'times' and 'values'");
    const VectorXd ts = vector_from(j["times"], path, "control.times");
    std::vector<VectorXd> values =
        vector_list_from(j["values"], path, "control.values");
    if (std::size_t(ts.size()) != values.size())
      fail(path, "control.times and control.values disagree in length");
    std::vector<double> times(ts.data(), ts.data() + ts.size());
    for (const auto& v : values)
      if (v.size() != n) fail(path, "control.values has the wrong dimension");
    return Control::sampled(std::move(times), std::move(values));
  }

  if (type == "expr") {
    if (!j.contains("components") || !j["components"].is_array())
      fail(path, "expr control needs a 'components' array of strings");
    const auto& comps = j["components"];
    if (int(comps.size()) != n)
      fail(path, "control.components has the wrong dimension");
    std::vector<std::function<double(double)>> fns;
    fns.reserve(comps.size());
    for (const auto& c : comps) {
      if (!c.is_string()) fail(path, "control.components must hold strings");
      fns.push_back(parse_expression(c.get<std::string>()));
    }
    return Control::callback([fns](double t) {
      VectorXd u(Eigen::Index(fns.size()));
      for (std::size_t i = 0; i < fns.size(); ++i)
        u(Eigen::Index(i)) = fns[i](t);
      return u;
    });
  }

  fail(path, "unknown control type '" + type + "'");
}

FrameFlavor flavor_from(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "flavor must be 'tangent' or 'normal'");
  const std::string s = j.get<std::string>();
  if (s == "tangent") return FrameFlavor::Tangent;
  if (s == "normal") return FrameFlavor::Normal;
  fail(path, "flavor must be 'tangent' or 'normal', got '" + s + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& path) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann already reports line and column for string inputs.
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object()) fail(path, "scenario must be a JSON object");

  Scenario sc;
  if (j.contains("signature")) {
    const auto& s = j["signature"];
    if (!s.is_object() || !s.contains("n") || !s.contains("nu"))
      fail(path, "signature must be an object with 'n' and 'nu'");
    if (!s["n"].is_number_integer() || !s["nu"].is_number_integer())
      fail(path, "signature.n and signature.nu must be integers");
    try {
      sc.sig = Signature(s["n"].get<int>(), s["nu"].get<int>());
    } catch (const DimensionError& e) {
      fail(path, e.what());
    }
  }
  if (j.contains("level")) {
    sc.level = number_from(j["level"], path, "level");
    if (sc.level == 0) fail(path, "level must be nonzero");
  }
  if (!j.contains("x0")) fail(path, "scenario needs 'x0'");
  sc.x0 = vector_from(j["x0"], path, "x0");
  if (sc.x0.size() != sc.sig.n) fail(path, "x0 has the wrong dimension");

  if (j.contains("t_end")) {
    sc.t_end = number_from(j["t_end"], path, "t_end");
    if (!(sc.t_end > 0)) fail(path, "t_end must be positive");
  }
  if (j.contains("step")) {
    sc.step = number_from(j["step"], path, "step");
    if (!(sc.step > 0)) fail(path, "step must be positive");
  }

  if (j.contains("control")) {
    sc.control = control_from(j["control"], sc.sig.n, path);
    sc.has_control = true;
  }

  if (j.contains("target")) {
    sc.target = vector_from(j["target"], path, "target");
    if (sc.target.size() != sc.sig.n) fail(path, "target has the wrong dimension");
    sc.has_target = true;
  }

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) fail(path, "grid must be an object");
    if (g.contains("na")) sc.grid_na = int(number_from(g["na"], path, "grid.na"));
    if (g.contains("nb")) sc.grid_nb = int(number_from(g["nb"], path, "grid.nb"));
    if (g.contains("a_max"))
      sc.a_max = number_from(g["a_max"], path, "grid.a_max");
    if (sc.grid_na < 2 || sc.grid_nb < 2) fail(path, "grid must be at least 2x2");
    if (!(sc.a_max > 0)) fail(path, "grid.a_max must be positive");
  }

  if (j.contains("transport")) {
    const auto& tr = j["transport"];
    if (!tr.is_object() || !tr.contains("y0"))
      fail(path, "transport must be an object with 'y0'");
    sc.transport_y0 = vector_from(tr["y0"], path, "transport.y0");
    if (sc.transport_y0.size() != sc.sig.n)
      fail(path, "transport.y0 has the wrong dimension");
    if (tr.contains("flavor"))
      sc.transport_flavor = flavor_from(tr["flavor"], path);
    sc.has_transport = true;
  }

  const auto read_frames = [&](const char* key, std::vector<VectorXd>& tangent,
                               std::vector<VectorXd>& normal) {
    if (!j.contains(key)) return;
    const auto& f = j[key];
    if (!f.is_object()) fail(path, std::string(key) + " must be an object");
    if (f.contains("tangent"))
      tangent = vector_list_from(f["tangent"], path,
                                 std::string(key) + ".tangent");
    if (f.contains("normal"))
      normal = vector_list_from(f["normal"], path,
                                std::string(key) + ".normal");
  };
  read_frames("frames", sc.frame_tangent, sc.frame_normal);
  read_frames("frames_hat", sc.frame_hat_tangent, sc.frame_hat_normal);

  if (j.contains("input")) {
    if (!j["input"].is_string()) fail(path, "input must be a file path string");
    sc.input_csv = j["input"].get<std::string>();
  }

  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open scenario file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace pseudoroll

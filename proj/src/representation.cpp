#include "primstab/representation.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace primstab {

using json = nlohmann::json;

double Representation::c_prime() const { return std::max(orbit_distance(A, o), orbit_distance(B, o)); }

const Mat& Representation::generator(Letter x) const { return is_a_family(x) ? A : B; }

Representation make_representation(const Mat& A, const Mat& B, Point o, SpaceConfig cfg) {
  if (!is_unimodular(A, cfg.tol) || !is_unimodular(B, cfg.tol))
    throw RepError(RepError::Kind::non_unimodular, "generator is not unimodular");
  if (!(o.t > 0)) throw PreconditionError("basepoint height must be positive");
  Representation r;
  r.config = cfg;
  r.A = A;
  r.B = B;
  r.o = o;
  return r;
}

Mat letter_matrix(const Representation& rho, Letter x) {
  const Mat& g = rho.generator(x);
  return is_inverse_letter(x) ? inverse_sl2(g) : g;
}

Scaled word_matrix(const Representation& rho, const Word& w) {
  Scaled r;
  for (Letter x : w.letters()) r = r * Scaled{letter_matrix(rho, x), 0};
  return r;
}

Scaled class_matrix(const Representation& rho, const BlockTower& t) {
  const Scaled ta{letter_matrix(rho, t.substitution.apply(Letter::a)), 0};
  const Scaled tb{letter_matrix(rho, t.substitution.apply(Letter::b)), 0};
  Scaled w = ta, wp = ta * tb;
  for (int n : t.cf()) {
    Scaled next = scaled_power(w, n - 1) * wp;
    wp = w * next;
    w = next;
  }
  return w;
}

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw RepError(RepError::Kind::missing_field, std::string("missing field '") + name + "'");
  return j.at(name);
}

std::complex<double> complex_of(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw RepError(RepError::Kind::malformed, where + " must be [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

Mat matrix_of(const json& v, const std::string& name) {
  if (!v.is_array() || v.size() != 4) throw RepError(RepError::Kind::malformed, name + " must list 4 entries");
  Mat m;
  for (int k = 0; k < 4; ++k) m(k / 2, k % 2) = complex_of(v[k], name);
  return m;
}

json complex_json(std::complex<double> c) { return json::array({c.real(), c.imag()}); }

json matrix_json(const Mat& m) {
  json a = json::array();
  for (int k = 0; k < 4; ++k) a.push_back(complex_json(m(k / 2, k % 2)));
  return a;
}

}  // namespace

Representation parse_rep_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RepError(RepError::Kind::malformed, std::string("invalid JSON: ") + e.what());
  }
  const std::string model = field(j, "model").get<std::string>();
  SpaceConfig cfg;
  if (model == "H2")
    cfg.model = Model::H2;
  else if (model == "H3")
    cfg.model = Model::H3;
  else
    throw RepError(RepError::Kind::malformed, "model must be H2 or H3");
  const Mat A = matrix_of(field(j, "A"), "A");
  const Mat B = matrix_of(field(j, "B"), "B");
  Point o{0, 1};
  if (j.contains("basepoint")) {
    const json& bp = j.at("basepoint");
    o.z = complex_of(field(bp, "z"), "basepoint.z");
    o.t = field(bp, "t").get<double>();
  }
  if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
  if (cfg.model == Model::H2) {
    const double im = std::max({A.imag().cwiseAbs().maxCoeff(), B.imag().cwiseAbs().maxCoeff(), std::abs(o.z.imag())});
    if (im != 0) throw RepError(RepError::Kind::model_mismatch, "H2 representation has complex entries");
  }
  for (const auto& [name, m] : {std::pair<const char*, const Mat&>{"A", A}, {"B", B}}) {
    if (!is_unimodular(m, cfg.tol)) {
      std::ostringstream os;
      os << name << " is not unimodular (|det - 1| = " << std::abs(det(m) - 1.0) << ")";
      throw RepError(RepError::Kind::non_unimodular, os.str());
    }
  }
  if (!(o.t > 0)) throw RepError(RepError::Kind::malformed, "basepoint height must be positive");
  return make_representation(A, B, o, cfg);
}

Representation parse_rep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RepError(RepError::Kind::malformed, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rep_json(ss.str());
}

std::string rep_to_json(const Representation& rho) {
  json j;
  j["model"] = rho.config.model == Model::H2 ? "H2" : "H3";
  j["A"] = matrix_json(rho.A);
  j["B"] = matrix_json(rho.B);
  j["basepoint"] = {{"z", complex_json(rho.o.z)}, {"t", rho.o.t}};
  j["delta"] = rho.config.delta;
  return j.dump();
}

Representation rep_from_traces(double x, double y, double z) {
  if (std::abs(z) < 2) throw PreconditionError("trace of ab must satisfy |z| >= 2");
  const double s = (-z + std::copysign(std::sqrt(z * z - 4), z)) / 2;
  SpaceConfig cfg;
  cfg.model = Model::H2;
  const Mat A = make_mat<double>(x, 1, -1, 0);
  const Mat B = make_mat<double>(0, s, -1 / s, y);
  return make_representation(A, B, {0, 1}, cfg);
}

Representation markoff_representation() {
  SpaceConfig cfg;
  cfg.model = Model::H2;
  return make_representation(make_mat<double>(1, 1, 1, 2), make_mat<double>(1, -1, -1, 2), {0, 1}, cfg);
}

}  // namespace primstab

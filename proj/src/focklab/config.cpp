#include "focklab/config.hpp"

#include <cmath>
#include <json.hpp>

#include "focklab/errors.hpp"

namespace focklab::config {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw DomainError("potential config must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw DomainError(std::string("potential config is not valid JSON: ") + e.what());
  }
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw DomainError(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
  return x;
}

int index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000) {
    throw DomainError(std::string(what) + " must be an integer in [0, 1000]");
  }
  return v.get<int>();
}

const json& row(const json& v, std::size_t len, const char* what) {
  if (!v.is_array() || v.size() != len) {
    throw DomainError(std::string(what) + " entries must be arrays of length " + std::to_string(len));
  }
  return v;
}

void reject_unknown(const json& j) {
  static const char* known[] = {"kind", "k", "c", "radial_coeffs", "hermitian_coeffs", "spectators"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw DomainError("unknown potential config key '" + it.key() + "'");
  }
}

double read_c(const json& j) { return j.contains("c") ? number(j["c"], "c") : 0.0; }

std::vector<potentials::Spectator> read_spectators(const json& j) {
  std::vector<potentials::Spectator> out;
  if (!j.contains("spectators")) return out;
  if (!j["spectators"].is_array()) throw DomainError("spectators must be an array");
  for (const auto& s : j["spectators"]) {
    row(s, 3, "spectators");
    out.push_back({cplx(number(s[0], "spectator position"), number(s[1], "spectator position")),
                   number(s[2], "spectator charge")});
  }
  return out;
}

HermitianPoly read_hermitian(const json& j) {
  if (!j.contains("hermitian_coeffs") || !j["hermitian_coeffs"].is_array()) {
    throw DomainError("hermitian potential needs a hermitian_coeffs array");
  }
  if (j.contains("radial_coeffs")) throw DomainError("give either radial_coeffs or hermitian_coeffs");
  std::vector<HermitianTerm> terms;
  for (const auto& t : j["hermitian_coeffs"]) {
    row(t, 4, "hermitian_coeffs");
    terms.push_back({index(t[0], "i"), index(t[1], "j"),
                     cplx(number(t[2], "coefficient"), number(t[3], "coefficient"))});
  }
  return HermitianPoly::from_terms(terms);
}

std::string kind_of(const json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw DomainError("potential config needs \"kind\": \"radial\" or \"hermitian\"");
  }
  const auto k = j["kind"].get<std::string>();
  if (k != "radial" && k != "hermitian") throw DomainError("unknown potential kind '" + k + "'");
  return k;
}

// An optional "k" is a consistency check against the detected degree.
void check_k(const json& j, int detected) {
  if (!j.contains("k")) return;
  if (index(j["k"], "k") != detected) {
    throw DomainError("config says k = " + j["k"].dump() + " but the potential has k = " +
                      std::to_string(detected));
  }
}

potentials::MacroscopicPotential parse_radial(const json& j, double c,
                                              std::vector<potentials::Spectator> spect) {
  if (!j.contains("radial_coeffs") || !j["radial_coeffs"].is_array()) {
    throw DomainError("radial potential needs a radial_coeffs array");
  }
  if (j.contains("hermitian_coeffs")) throw DomainError("give either radial_coeffs or hermitian_coeffs");
  std::vector<double> q;
  std::vector<bool> seen;
  for (const auto& t : j["radial_coeffs"]) {
    row(t, 2, "radial_coeffs");
    const int m = index(t[0], "m");
    if (q.size() <= static_cast<std::size_t>(m)) {
      q.resize(m + 1, 0.0);
      seen.resize(m + 1, false);
    }
    if (seen[m]) throw DomainError("duplicate radial coefficient m = " + std::to_string(m));
    seen[m] = true;
    q[m] = number(t[1], "radial coefficient");
  }
  return potentials::MacroscopicPotential::radial(std::move(q), c, std::move(spect));
}

}  // namespace

potentials::MacroscopicPotential parse_potential(const std::string& json_text) {
  const json j = parse(json_text);
  reject_unknown(j);
  const double c = read_c(j);
  auto spect = read_spectators(j);
  auto q = kind_of(j) == "hermitian"
               ? potentials::MacroscopicPotential::hermitian(read_hermitian(j), c, std::move(spect))
               : parse_radial(j, c, std::move(spect));
  check_k(j, potentials::detect_k(q));
  return q;
}

potentials::MicroscopicPotential parse_microscopic(const std::string& json_text) {
  const json j = parse(json_text);
  reject_unknown(j);
  if (j.contains("spectators")) throw DomainError("a microscopic potential has no spectators");
  const double c = read_c(j);
  HermitianPoly poly;
  if (kind_of(j) == "radial") {
    if (!j.contains("radial_coeffs") || !j["radial_coeffs"].is_array()) {
      throw DomainError("radial potential needs a radial_coeffs array");
    }
    std::vector<double> q;
    for (const auto& t : j["radial_coeffs"]) {
      row(t, 2, "radial_coeffs");
      const int m = index(t[0], "m");
      if (q.size() <= static_cast<std::size_t>(m)) q.resize(m + 1, 0.0);
      q[m] += number(t[1], "radial coefficient");
    }
    poly = HermitianPoly::radial(q);
  } else {
    poly = read_hermitian(j);
  }
  if (poly.empty()) throw DomainError("Q_0 is identically zero");
  const int deg = poly.max_degree();
  if (poly.min_degree() != deg) throw DomainError("Q_0 must be homogeneous");
  potentials::MicroscopicPotential p(c, HomogeneousHermitianPoly(deg, poly));
  check_k(j, p.k());
  return p;
}

std::string to_json(const potentials::MacroscopicPotential& q) {
  json j;
  j["c"] = q.c();
  if (q.is_radial()) {
    j["kind"] = "radial";
    json rc = json::array();
    const auto& r = q.radial_coeffs();
    for (std::size_t m = 0; m < r.size(); ++m) {
      if (r[m] != 0.0) rc.push_back({m, r[m]});
    }
    j["radial_coeffs"] = rc;
  } else {
    j["kind"] = "hermitian";
    json hc = json::array();
    for (const auto& [ij, a] : q.taylor().terms()) hc.push_back({ij.first, ij.second, a.real(), a.imag()});
    j["hermitian_coeffs"] = hc;
  }
  if (!q.spectators().empty()) {
    json sp = json::array();
    for (const auto& s : q.spectators()) sp.push_back({s.a.real(), s.a.imag(), s.c});
    j["spectators"] = sp;
  }
  return j.dump();
}

}  // namespace focklab::config

#include "cohomolab/report_json.hpp"

#include <cmath>

namespace cohomolab {

Json json_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json to_json(const DegreeReport& d) {
  Json j;
  j["n"] = d.n;
  j["dim_C"] = d.dim_C;
  j["rank"] = d.rank;
  j["dim_ker"] = d.dim_ker;
  j["dim_H"] = d.dim_H;
  j["kappa"] = json_real(d.kappa);
  j["gap"] = json_real(d.gap);
  j["threshold"] = json_real(d.threshold);
  j["sigma_below"] = json_real(d.sigma_below);
  j["sigma_above"] = json_real(d.sigma_above);
  j["laplacian_lambda_min"] = json_real(d.laplacian_lambda_min);
  return j;
}

Json to_json(const CohomologyReport& r) {
  Json j;
  j["complex"] = r.complex_name;
  j["rep"] = r.rep_label;
  j["dim_E"] = r.dim_E;
  j["unitary"] = r.unitary;
  j["rank_tol"] = json_real(r.rank_tol);
  j["euler_characteristic"] = r.euler_characteristic;
  j["euler_audit_ok"] = r.euler_audit_ok;
  j["degrees"] = Json::array();
  for (const auto& d : r.degrees) j["degrees"].push_back(to_json(d));
  return j;
}

Json to_json(const ChainEvaluation& c) {
  Json j;
  j["eps"] = json_real(c.eps);
  j["certified"] = c.certified;
  j["delta_n"] = json_real(c.delta_n);
  j["delta_nm1"] = json_real(c.delta_nm1);
  j["eta"] = json_real(c.eta);
  j["lower_bound"] = json_real(c.lower_bound);
  j["drift_bound"] = json_real(c.drift_bound);
  j["injective_case"] = c.injective_case;
  return j;
}

Json to_json(const SufficientEpsilon& s) {
  Json j;
  j["found"] = s.found;
  j["epsilon_star"] = json_real(s.epsilon_star);
  j["at_star"] = to_json(s.at_star);
  j["diagnostic"] = s.diagnostic;
  return j;
}

Json to_json(const WeilCertificate& w) {
  Json j;
  j["rigid"] = w.rigid;
  j["dim_H1"] = w.dim_H1;
  j["ad_dim"] = w.ad_dim;
  j["kappa_0"] = json_real(w.kappa_0);
  j["kappa_1"] = json_real(w.kappa_1);
  return j;
}

}  // namespace cohomolab

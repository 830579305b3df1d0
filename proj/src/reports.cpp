#include "gaussbreak/documents.hpp"

#include <complex>

namespace gaussbreak {

using nlohmann::json;

namespace {

json complex_vector(const ComplexVector& z) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    re.push_back(z(i).real());
    im.push_back(z(i).imag());
  }
  return json{{"re", re}, {"im", im}};
}

}  // namespace

json to_json(const PsdVerdict& v) {
  json out{{"is_psd", v.is_psd},
           {"min_eigenvalue", v.min_eigenvalue},
           {"tolerance_used", v.tolerance_used}};
  if (!v.is_psd) out["witness"] = complex_vector(v.witness);
  return out;
}

json to_json(const ValidityReport& r) {
  json checks = json::array();
  for (const InvariantCheck& c : r.checks) {
    json entry = to_json(c.verdict);
    entry["name"] = c.name;
    checks.push_back(std::move(entry));
  }
  return json{{"valid", r.valid()}, {"checks", checks}};
}

json to_json(const FeasibilityResult& r) {
  json out{{"status", to_string(r.status)},
           {"residual", r.residual},
           {"iterations", r.iterations}};
  if (r.solution) out["solution"] = to_json(*r.solution);
  return out;
}

json to_json(const EbResult& r) {
  json out{{"status", to_string(r.status)},
           {"entanglement_breaking", r.status == EbStatus::Feasible},
           {"solver", to_json(r.solver)}};
  if (r.certificate)
    out["certificate"] = json{{"B1", to_json(r.certificate->b1)},
                              {"residual_B1", r.certificate->residual_b1},
                              {"residual_B2", r.certificate->residual_b2}};
  return out;
}

json to_json(const SteerabilityBreakingReport& r) {
  json probe = json::array();
  for (const EprProbePoint& p : r.probe)
    probe.push_back(
        json{{"r", p.r}, {"min_eigenvalue", p.min_eigenvalue}, {"steerable", p.steerable}});
  return json{{"steerability_breaking", r.breaking},
              {"gib", to_json(r.gib)},
              {"kernel_limit", r.kernel_limit},
              {"probe", probe},
              {"probe_agrees", r.probe_agrees}};
}

json to_json(const ClassicalNoiseFlags& f) {
  return json{{"gib", f.gib.is_psd},
              {"gib_verdict", to_json(f.gib)},
              {"eb", to_json(f.eb)},
              {"noise_is_gaussian_state_wigner", f.noise_is_gaussian_state_wigner}};
}

json to_json(const ChannelReport& r) {
  json out{{"valid", r.valid.is_psd}, {"validity", to_json(r.valid)}};
  if (r.gib) {
    out["gib"] = r.gib->is_psd;
    out["gib_verdict"] = to_json(*r.gib);
    out["gib_at_boundary"] = r.gib_at_boundary;
  }
  if (r.eb) out["eb"] = to_json(*r.eb);
  if (r.steering) out["steering"] = to_json(*r.steering);
  if (r.classical_noise) out["classical_noise"] = to_json(*r.classical_noise);
  return out;
}

json to_json(const IncompatibilityWitness& w) {
  return json{{"x", to_json(w.x)},
              {"y", to_json(w.y)},
              {"e1", to_document(w.e1)},
              {"e2", to_document(w.e2)},
              {"f1", to_document(w.f1)},
              {"f2", to_document(w.f2)},
              {"violation", w.violation},
              {"determinant_bound", w.determinant_bound}};
}

json to_json(const CompatibilityVerdict& v) {
  json out{{"compatible", v.compatible},
           {"at_boundary", v.at_boundary},
           {"min_eigenvalue", v.min_eigenvalue},
           {"certificate", v.certificate}};
  if (v.joint) out["joint"] = to_document(*v.joint);
  if (v.completion) out["completion"] = to_json(*v.completion);
  if (v.solver) out["solver"] = to_json(*v.solver);
  return out;
}

json to_json(const SteeringVerdict& v) {
  return json{{"steerable", v.steerable}, {"verdict", to_json(v.verdict)}};
}

json to_json(const OutcomeGaussian& d) {
  return json{{"mean", to_json(d.mean)}, {"covariance", to_json(d.covariance)}};
}

}  // namespace gaussbreak

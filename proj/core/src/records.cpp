#include "pspin/records.hpp"

#include <cstdio>
#include <ostream>

namespace pspin {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string variant_name(const ModelVariant& v) {
  if (std::holds_alternative<FiniteRange>(v)) return "finite_range";
  if (std::holds_alternative<RandomDilution>(v)) return "random";
  return "uniform";
}

std::string ansatz_name(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::NestedCommutator:
      return "nc";
    case AnsatzKind::Cyclic:
      return "ca";
    case AnsatzKind::Exact:
      return "exact";
    case AnsatzKind::None:
      break;
  }
  return "none";
}

std::optional<AnsatzKind> parse_ansatz_name(const std::string& name) {
  if (name == "none") return AnsatzKind::None;
  if (name == "nc") return AnsatzKind::NestedCommutator;
  if (name == "ca") return AnsatzKind::Cyclic;
  if (name == "exact") return AnsatzKind::Exact;
  return std::nullopt;
}

void write_config_echo(std::ostream& os, const ConfigEcho& echo) {
  for (const auto& [key, value] : echo) os << "# " << key << "=" << value << "\n";
}

void write_trajectory(std::ostream& os, const RunRecord& rec) {
  os << "t,lambda,pgs\n";
  const Schedule sched{rec.total_time};
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    os << format_number(rec.times[i]) << ','
       << format_number(sched.lambda(rec.times[i])) << ','
       << format_number(rec.pgs[i]) << '\n';
  }
}

void write_summary_header(std::ostream& os) {
  os << "n,p,variant,nu,pj,ansatz,l,eta,T,dt,seed,F,min_gap\n";
}

void write_summary_row(std::ostream& os, const RunRecord& rec,
                       std::optional<double> min_gap) {
  double nu = 0.0, pj = 1.0;
  if (const auto* fr = std::get_if<FiniteRange>(&rec.spec.variant)) {
    nu = fr->range_exponent;
  } else if (const auto* rd = std::get_if<RandomDilution>(&rec.spec.variant)) {
    pj = rd->survival_probability;
  }
  os << rec.spec.n << ',' << rec.spec.p << ',' << variant_name(rec.spec.variant)
     << ',' << format_number(nu) << ',' << format_number(pj) << ','
     << ansatz_name(rec.ansatz.kind) << ','
     << (rec.ansatz.kind == AnsatzKind::NestedCommutator ? rec.ansatz.order : 0)
     << ',' << format_number(rec.ansatz.eta) << ','
     << format_number(rec.total_time) << ',' << format_number(rec.dt) << ','
     << rec.seed << ',' << format_number(rec.fidelity) << ','
     << (min_gap ? format_number(*min_gap) : "") << '\n';
}

void write_fit(std::ostream& os, const FitResult& fit) {
  os << "phi,gamma,residual,n_lo,n_hi\n"
     << format_number(fit.phi) << ',' << format_number(fit.gamma) << ','
     << format_number(fit.residual) << ',' << fit.n_lo << ',' << fit.n_hi << '\n';
}

void write_histogram(std::ostream& os, const Histogram& hist) {
  os << "bin_lo,bin_hi,count\n";
  const double width = (hist.hi - hist.lo) / hist.n_bins;
  for (int i = 0; i < hist.n_bins; ++i) {
    os << format_number(hist.lo + i * width) << ','
       << format_number(hist.lo + (i + 1) * width) << ',' << hist.counts[i] << '\n';
  }
}

}  // namespace pspin

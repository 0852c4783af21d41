#include "latq/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latq {

namespace {

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

nlohmann::ordered_json reference_json(const TableRow& row) {
  nlohmann::ordered_json j;
  j["n"] = row.n;
  j["best_previous_nsm"] = row.best_prev_nsm;
  j["best_previous_lattice"] = row.best_prev_name;
  j["lower_bound"] = row.lower_bound;
  j["upper_bound"] = row.upper_bound;
  if (row.proposed_nsm > 0.0) {
    j["proposed_nsm"] = row.proposed_nsm;
    j["proposed_lattice"] = row.proposed_name;
    j["better_than_reported"] = row.better_than_reported;
  }
  return j;
}

Descriptor parse_or_throw(const std::string& name, bool* product = nullptr) {
  const auto parsed = parse_lattice_name(name);
  if (!parsed) throw std::invalid_argument("unknown lattice name: " + name);
  if (product) *product = parsed->product;
  else if (parsed->product)
    throw std::invalid_argument("product lattice not supported here: " + name);
  return parsed->base;
}

}  // namespace

RunReport run_nsm(const std::string& name, const SamplerConfig& cfg) {
  bool product = false;
  const Descriptor base = parse_or_throw(name, &product);

  RunReport rep;
  rep.lattice = name;
  const auto start = std::chrono::steady_clock::now();
  if (product) {
    const NsmEstimate base_est = estimate_nsm(base, cfg);
    rep.descriptor = product_extend(base, base_est.g_hat);
    rep.estimate = estimate_nsm(rep.descriptor, cfg);
    rep.base_estimate = base_est;
    rep.product_a = rep.descriptor.product_a;
    rep.analytic_g_hat = product_nsm_analytic_dim(base_est.g_hat, base_est.n);
  } else {
    rep.descriptor = base;
    rep.estimate = estimate_nsm(base, cfg);
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.reference = table1_row(rep.estimate.n);
  return rep;
}

nlohmann::ordered_json report_json(const RunReport& r) {
  nlohmann::ordered_json rep;
  rep["lattice"] = r.lattice;
  rep["n"] = r.estimate.n;
  rep["volume"] = r.estimate.volume;
  rep["g_hat"] = r.estimate.g_hat;
  rep["sigma_hat"] = r.estimate.sigma_hat;
  rep["ci_low"] = r.estimate.ci_low();
  rep["ci_high"] = r.estimate.ci_high();
  rep["i_hat"] = r.estimate.i_hat;
  rep["samples"] = r.estimate.config.samples;
  rep["groups"] = r.estimate.config.groups;
  rep["per_group"] = r.estimate.config.per_group();
  rep["seed"] = r.estimate.config.seed;
  if (r.product_a) {
    nlohmann::ordered_json p;
    p["a"] = *r.product_a;
    p["base_g_hat"] = r.base_estimate->g_hat;
    p["base_sigma_hat"] = r.base_estimate->sigma_hat;
    p["analytic_g_hat"] = *r.analytic_g_hat;
    rep["product"] = p;
  }
  rep["reference"] = r.reference ? reference_json(*r.reference) : nlohmann::ordered_json();

  nlohmann::ordered_json j;
  j["schema"] = "latq-run-report/1";
  j["report"] = rep;
  j["execution"] = {{"wall_seconds", r.wall_seconds},
                    {"workers", r.estimate.config.workers}};
  return j;
}

std::string report_text(const RunReport& r) {
  std::ostringstream os;
  os << "lattice   " << r.lattice << "  (n = " << r.estimate.n
     << ", volume = " << fixed9(r.estimate.volume) << ")\n";
  os << "G_hat     " << fixed9(r.estimate.g_hat) << "  +/- " << sci(2.0 * r.estimate.sigma_hat)
     << "  (2 sigma)\n";
  os << "sigma_hat " << sci(r.estimate.sigma_hat) << "\n";
  os << "samples   " << r.estimate.config.samples << "  groups " << r.estimate.config.groups
     << "  seed " << r.estimate.config.seed << "\n";
  if (r.product_a) {
    os << "product   a = " << fixed9(*r.product_a)
       << ", base G_hat = " << fixed9(r.base_estimate->g_hat)
       << ", analytic G_hat = " << fixed9(*r.analytic_g_hat) << "\n";
  }
  if (r.reference && r.reference->proposed_nsm > 0.0) {
    os << "reference " << fixed9(r.reference->proposed_nsm) << " (" << r.reference->proposed_name
       << "), delta = " << sci(std::abs(r.estimate.g_hat - r.reference->proposed_nsm)) << "\n";
  }
  os << "wall      " << sci(r.wall_seconds) << " s\n";
  return os.str();
}

std::string report_csv(const RunReport& r) {
  std::ostringstream os;
  os << "n,lattice,g_hat,sigma_hat,paper_value,abs_delta,pass\n";
  os << r.estimate.n << ',' << r.lattice << ',' << fixed9(r.estimate.g_hat) << ','
     << sci(r.estimate.sigma_hat) << ',';
  if (r.reference && r.reference->proposed_nsm > 0.0) {
    const double delta = std::abs(r.estimate.g_hat - r.reference->proposed_nsm);
    os << fixed9(r.reference->proposed_nsm) << ',' << sci(delta) << ','
       << (delta <= 5e-4 ? "yes" : "no");
  } else {
    os << ",,";
  }
  os << '\n';
  return os.str();
}

CvpReport run_cvp(const std::string& name, std::vector<double> input) {
  const Descriptor d = parse_or_throw(name);
  CvpReport rep;
  rep.lattice = name;
  if (input.size() != static_cast<std::size_t>(d.real_dim()))
    throw std::invalid_argument("vector dimension does not match the lattice");
  rep.result = quantize_real(input, d);
  rep.input = std::move(input);
  return rep;
}

nlohmann::ordered_json cvp_json(const CvpReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "latq-cvp-report/1";
  j["lattice"] = r.lattice;
  j["n"] = r.input.size();
  j["input"] = r.input;
  j["point"] = r.result.point;
  j["squared_distance"] = r.result.squared_error;
  j["visited"] = r.result.visited;
  return j;
}

std::string cvp_text(const CvpReport& r) {
  std::ostringstream os;
  os << "lattice " << r.lattice << "\npoint  ";
  for (double v : r.result.point) os << ' ' << fixed9(v);
  os << "\ndist^2  " << fixed9(r.result.squared_error) << "\nvisited " << r.result.visited
     << "\n";
  return os.str();
}

std::vector<TableRunRow> run_table(const SamplerConfig& cfg) {
  std::vector<TableRunRow> rows;
  NsmEstimate even_est;
  for (int n = 2; n <= 24; ++n) {
    const TableRow* ref = table1_row(n);
    TableRunRow row;
    row.n = n;
    row.lattice = ref->proposed_name;
    if (n % 2 == 0) {
      const auto parsed = parse_lattice_name(ref->proposed_name);
      even_est = estimate_nsm(parsed->base, cfg);
      row.g_hat = even_est.g_hat;
      row.sigma_hat = even_est.sigma_hat;
    } else {
      row.g_hat = product_nsm_analytic_dim(even_est.g_hat, n - 1);
      // First-order error propagation through the product formula.
      row.sigma_hat = even_est.sigma_hat * (static_cast<double>(n - 1) / n) *
                      (row.g_hat / even_est.g_hat);
    }
    row.paper_value = ref->proposed_nsm;
    row.abs_delta = std::abs(row.g_hat - row.paper_value);
    row.pass = row.abs_delta <= 5e-4;
    rows.push_back(row);
  }
  return rows;
}

std::string table_csv(const std::vector<TableRunRow>& rows) {
  std::ostringstream os;
  os << "n,lattice,g_hat,sigma_hat,paper_value,abs_delta,pass\n";
  for (const TableRunRow& r : rows) {
    os << r.n << ',' << r.lattice << ',' << fixed9(r.g_hat) << ',' << sci(r.sigma_hat) << ','
       << fixed9(r.paper_value) << ',' << sci(r.abs_delta) << ',' << (r.pass ? "yes" : "no")
       << '\n';
  }
  return os.str();
}

nlohmann::ordered_json equivalence_json(const std::string& name_a, const std::string& name_b,
                                        const EquivalenceReport& rep) {
  auto theta = [](const std::vector<ThetaShell>& shells) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ThetaShell& s : shells) arr.push_back({s.sq_norm, s.count});
    return arr;
  };
  nlohmann::ordered_json j;
  j["schema"] = "latq-equivalence-report/1";
  j["lattice_a"] = name_a;
  j["lattice_b"] = name_b;
  j["verdict"] = rep.consistent ? "consistent" : "inconsistent";
  j["volume_ratio"] = rep.volume_ratio;
  j["min_sq_norm"] = {rep.min_sq_norm_a, rep.min_sq_norm_b};
  j["kissing"] = {rep.kissing_a, rep.kissing_b};
  j["theta_a"] = theta(rep.theta_a);
  j["theta_b"] = theta(rep.theta_b);
  return j;
}

std::string equivalence_text(const std::string& name_a, const std::string& name_b,
                             const EquivalenceReport& rep) {
  std::ostringstream os;
  os << name_a << " vs " << name_b << ": "
     << (rep.consistent ? "consistent" : "inconsistent") << "\n";
  os << "volume ratio " << fixed9(rep.volume_ratio) << "\n";
  os << "min |v|^2    " << fixed9(rep.min_sq_norm_a) << " / " << fixed9(rep.min_sq_norm_b)
     << " (unit volume)\n";
  os << "kissing      " << rep.kissing_a << " / " << rep.kissing_b << "\n";
  return os.str();
}

RealBasis resolve_basis(const std::string& name) {
  if (const auto parsed = parse_lattice_name(name)) {
    if (parsed->product)
      throw std::invalid_argument("product lattices are not supported here: " + name);
    return realize(parsed->base);
  }
  if (auto ref = reference_basis(name)) return *ref;
  throw std::invalid_argument("unknown lattice name: " + name);
}

}  // namespace latq

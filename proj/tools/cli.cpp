#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "opvd/anomaly.hpp"
#include "opvd/causal2d.hpp"
#include "opvd/clifford.hpp"
#include "opvd/distext.hpp"
#include "opvd/smear2d.hpp"
#include "opvd/testfn.hpp"
#include "opvd/verify.hpp"

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

opvd::testfn::ProfileShape parse_shape(const std::string& s) {
  if (s == "bump") return opvd::testfn::ProfileShape::Bump;
  if (s == "flattop") return opvd::testfn::ProfileShape::FlatTop;
  throw CLI::ValidationError("--shape/--profile must be 'bump' or 'flattop'");
}

void print_csv_header(const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i)
    std::cout << cols[i] << (i + 1 < cols.size() ? "," : "\n");
}

struct CsvRow {
  explicit CsvRow(std::ostream& os) : os_(os) {}
  ~CsvRow() { os_ << "\n"; }
  CsvRow& operator<<(double v) {
    if (!first_) os_ << ",";
    first_ = false;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os_ << buf;
    return *this;
  }
  std::ostream& os_;
  bool first_ = true;
};

// ----------------------------------------------------------------

int run_clifford(const std::string& check, int dim, const std::string& rep_s) {
  using namespace opvd::clifford;
  const Representation rep =
      rep_s == "chiral" ? Representation::Chiral : Representation::Dirac;
  const MetricSignature sig = MetricSignature::minkowski(dim);
  const DiracMatrix id = DiracMatrix::identity(dim);

  struct Line {
    std::string name;
    double defect;
  };
  std::vector<Line> lines;

  auto want = [&](const std::string& n) {
    return check == "all" || check == n;
  };

  if (want("clifford")) {
    double worst = 0.0;
    for (int mu = 0; mu < dim; ++mu)
      for (int nu = 0; nu < dim; ++nu) {
        const DiracMatrix gm = gamma(sig, mu, rep), gn = gamma(sig, nu, rep);
        worst = std::max(worst, (gm * gn + gn * gm -
                                 id * Complex(2.0 * sig.g(mu, nu))).max_abs());
      }
    lines.push_back({"anticommutator {g^mu,g^nu} = 2 g^{mu nu}", worst});
  }
  if (want("gamma5")) {
    const DiracMatrix g5 = gamma5(sig, rep);
    double worst = (g5 * g5 - id).max_abs();
    worst = std::max(worst, (g5 - g5.adjoint()).max_abs());
    for (int mu = 0; mu < dim; ++mu) {
      const DiracMatrix gm = gamma(sig, mu, rep);
      worst = std::max(worst, (g5 * gm + gm * g5).max_abs());
    }
    lines.push_back({"gamma5 hermitian, unipotent, anticommuting", worst});
  }
  if (want("projectors")) {
    const DiracMatrix pp = chiral_projector(sig, +1, rep);
    const DiracMatrix pm = chiral_projector(sig, -1, rep);
    double worst = (pp * pp - pp).max_abs();
    worst = std::max(worst, (pm * pm - pm).max_abs());
    worst = std::max(worst, (pp * pm).max_abs());
    worst = std::max(worst, (pp + pm - id).max_abs());
    lines.push_back({"chiral projectors", worst});
  }
  if (want("commutator")) {
    lines.push_back({"[g^mu(1+g5), g^nu(1+g5)] = 0",
                     chirality_commutator_check(sig, +1, +1, rep)});
    lines.push_back({"[g^mu(1-g5), g^nu(1-g5)] = 0",
                     chirality_commutator_check(sig, -1, -1, rep)});
    lines.push_back({"mixed chirality commutator (generally nonzero)",
                     chirality_commutator_check(sig, +1, -1, rep)});
  }
  if (want("duality") && dim == 2) {
    const DualityResult d = duality_identity_2d(LeviCivita{2, +1}, rep);
    lines.push_back({"g^mu eps_{mu nu} = s g5 g_nu, s=" +
                         std::to_string(d.sign),
                     d.defect});
  }

  bool ok = true;
  for (const auto& l : lines) {
    // the mixed commutator is reported, not gated
    const bool gated = l.name.find("generally nonzero") == std::string::npos;
    const bool pass = !gated || l.defect <= 1e-13;
    ok = ok && pass;
    std::printf("%-55s defect=%.3e %s\n", l.name.c_str(), l.defect,
                gated ? (pass ? "PASS" : "FAIL") : "");
  }
  return ok ? 0 : 1;
}

int run_testfn(const std::string& shape, double radius, double center,
               int samples) {
  const opvd::testfn::BumpProfile f(parse_shape(shape), radius, center);
  print_csv_header({"x", "f", "df", "d2f"});
  for (int i = 0; i < samples; ++i) {
    const double x = f.support_min() - 0.1 * radius +
                     (f.support_max() - f.support_min() + 0.2 * radius) * i /
                         (samples - 1.0);
    const opvd::testfn::Jet j = f.jet(x);
    CsvRow(std::cout) << x << j.value() << j.derivative(1) << j.derivative(2);
  }
  return 0;
}

int run_distext_pair(int k, int order, const std::string& shape, double radius,
                     const std::string& wshape, double wradius) {
  using namespace opvd;
  const testfn::BumpProfile f(parse_shape(shape), radius);
  const testfn::TaylorWeight w(
      testfn::BumpProfile(parse_shape(wshape), wradius), order);
  const testfn::JetFn fj = [f](double x) { return f.jet(x); };
  const auto res = distext::pair_finite_part(
      distext::PowerSingularity(k), fj, std::max(radius, wradius) + 0.5, w);
  json out = {{"value", res.value},
              {"error", res.quadrature_error},
              {"order", res.subtraction_order_used}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_distext_bphz(double m, double mu, const std::vector<double>& cutoffs) {
  const auto rows = opvd::distext::bphz_demo(m, mu, cutoffs);
  print_csv_header({"cutoff", "raw", "subtracted"});
  for (const auto& r : rows)
    CsvRow(std::cout) << r.cutoff << r.raw << r.subtracted;
  return 0;
}

int run_schwinger_rhat(double ksq, const std::vector<double>& msq_list) {
  print_csv_header({"msq", "re_rhat", "im_rhat", "dev_from_i_over_pi"});
  for (double msq : msq_list) {
    const std::complex<double> r = opvd::causal2d::rhat_closed(ksq, msq);
    CsvRow(std::cout) << msq << r.real() << r.imag()
                      << std::abs(r - std::complex<double>(0.0, 1.0 / kPi));
  }
  return 0;
}

int run_schwinger_mass(double e) {
  json out = {{"boson_mass_squared", opvd::causal2d::boson_mass_squared(e)}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_schwinger_gauge_check(const std::vector<double>& cutoffs, double m,
                              double kk) {
  print_csv_header(
      {"cutoff", "longitudinal_defect_ratio", "transverse_coefficient",
       "causal_transverse_euclidean"});
  for (double L : cutoffs) {
    const auto t = opvd::causal2d::naive_cutoff_polarization(kk, 0.0, m, L);
    const double contr0 = kk * t(0, 0), contr1 = kk * t(0, 1);
    const double defect = std::hypot(contr0, contr1) / (kk * t.frobenius());
    CsvRow(std::cout) << L << defect << t(1, 1)
                      << opvd::causal2d::pi_transverse_euclidean(kk * kk,
                                                                 m * m);
  }
  return 0;
}

int run_anomaly(int dim, const std::string& profile, double lambda,
                const std::vector<std::string>& fentries, double e,
                const std::string& rep_s) {
  using namespace opvd;
  const auto rep = rep_s == "chiral" ? clifford::Representation::Chiral
                                     : clifford::Representation::Dirac;
  anomaly::FieldStrength f(dim);
  for (const auto& ent : fentries) {
    const auto eq = ent.find('=');
    if (eq != 2 || !std::isdigit(static_cast<unsigned char>(ent[0])) ||
        !std::isdigit(static_cast<unsigned char>(ent[1])))
      throw CLI::ValidationError("--F entries look like 01=1.5");
    const int mu = ent[0] - '0', nu = ent[1] - '0';
    if (mu >= dim || nu >= dim || mu == nu)
      throw CLI::ValidationError("--F indices must be distinct and < dim");
    f.set(mu, nu, std::stod(ent.substr(eq + 1)));
  }
  const anomaly::RegulatorProfile reg(parse_shape(profile), lambda);
  json out;
  if (dim == 4) {
    out["radial_integral"] = anomaly::radial_integral_4d(reg);
    out["trace_factor"] = anomaly::trace_factor_4d(f, rep);
    out["density"] = anomaly::anomaly_density(f, e, reg, rep);
    out["coefficient"] = e * e / (16.0 * kPi * kPi);
  } else {
    out["radial_integral"] = anomaly::radial_integral_2d(reg);
    out["trace_factor"] = anomaly::trace_factor_2d(f, rep);
    out["density"] = anomaly::anomaly_density(f, e, reg, rep);
    out["coefficient"] = anomaly::anomaly_coefficient_2d(reg, rep);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

opvd::smear2d::ScalarField random_modes(const opvd::smear2d::Grid2& g,
                                        std::mt19937_64& rng, int max_mode,
                                        double amp) {
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * kPi);
  std::normal_distribution<double> gauss(0.0, amp);
  opvd::smear2d::ScalarField f(g.sites(), 0.0);
  for (int m0 = -max_mode; m0 <= max_mode; ++m0)
    for (int m1 = -max_mode; m1 <= max_mode; ++m1) {
      if (m0 == 0 && m1 == 0) continue;
      const double c = gauss(rng), ph = uphase(rng);
      for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
          f[i0 * g.n + i1] +=
              c * std::cos(2.0 * kPi * (m0 * i0 + m1 * i1) / g.n + ph);
    }
  return f;
}

int run_smear_covariance(int n, std::uint64_t seed, double radius) {
  using namespace opvd::smear2d;
  const Grid2 g(n, 1.0 / n);
  const PoissonSolver solver(g);
  const opvd::testfn::BumpProfile rho(opvd::testfn::ProfileShape::Bump, radius);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpinorField psi(g.sites());
  for (auto& s : psi)
    for (auto& c : s) c = {gauss(rng), gauss(rng)};
  GaugeField A;
  A.a.resize(g.sites());
  for (auto& v : A.a) {
    v[0] = gauss(rng);
    v[1] = gauss(rng);
  }
  const ScalarField lambda = random_modes(g, rng, 2, 0.5);
  std::uniform_int_distribution<int> usite(0, g.sites() - 1);
  const int x = usite(rng);

  const double defect =
      covariance_check(g, solver, psi, A, lambda, rho, 1.0, x);
  json out = {{"defect", defect}, {"n", n}, {"radius", radius}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_smear_bosonization(int n, const std::vector<int>& mode) {
  using namespace opvd::smear2d;
  const Grid2 g(n, 1.0 / n);
  const PoissonSolver solver(g);
  const opvd::testfn::BumpProfile rho(opvd::testfn::ProfileShape::Bump, 0.2);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpinorField psi(g.sites());
  for (auto& s : psi)
    for (auto& c : s) c = {gauss(rng), gauss(rng)};
  ScalarField phi(g.sites());
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1)
      phi[i0 * g.n + i1] =
          std::cos(2.0 * kPi * (mode[0] * i0 + mode[1] * i1) / g.n);

  const auto res =
      bosonization_check(g, solver, phi, psi, rho, 1.0, g.idx(n / 3, n / 2));
  json out = {{"defect", res.defect}, {"sign_s", res.sign_s}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  if (suite != "all") {
    const auto names = opvd::verify::check_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
      throw CLI::ValidationError("--suite must be 'all' or a check name");
  }
  const auto results = opvd::verify::run_suite(suite, seed);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("%-36s %s  measured=%.3e threshold=%.3e  (%.2fs)  %s\n",
                r.name.c_str(), r.pass ? "PASS" : "FAIL", r.measured,
                r.threshold, r.seconds, r.detail.c_str());
  }
  std::printf("%zu/%zu checks passed\n",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return r.pass; })),
              results.size());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for causal regularization in 2D QED"};
  app.require_subcommand(1);

  // clifford ------------------------------------------------------
  auto* cl = app.add_subcommand("clifford", "gamma-algebra identity checks");
  std::string cl_check = "all";
  int cl_dim = 4;
  std::string cl_rep = "dirac";
  cl->add_option("--check", cl_check, "identity to check (or 'all')");
  cl->add_option("--dim", cl_dim, "spinor dimension")->check(CLI::IsMember({2, 4}));
  cl->add_option("--rep", cl_rep, "representation")
      ->check(CLI::IsMember({"dirac", "chiral"}));

  // testfn --------------------------------------------------------
  auto* tf = app.add_subcommand("testfn", "sample a test-function profile");
  std::string tf_shape = "bump";
  double tf_radius = 1.0, tf_center = 0.0;
  int tf_samples = 101;
  tf->add_option("--shape", tf_shape)->check(CLI::IsMember({"bump", "flattop"}));
  tf->add_option("--radius", tf_radius)->check(CLI::PositiveNumber);
  tf->add_option("--center", tf_center);
  tf->add_option("--sample", tf_samples, "number of sample points")
      ->check(CLI::Range(2, 1000000));

  // distext -------------------------------------------------------
  auto* de = app.add_subcommand("distext", "finite-part extension");
  de->require_subcommand(1);
  auto* de_pair = de->add_subcommand("pair", "finite-part pairing");
  int de_k = 2, de_order = 1;
  std::string de_shape = "bump", de_wshape = "flattop";
  double de_radius = 1.0, de_wradius = 1.0;
  de_pair->add_option("--k", de_k, "power of the singularity")
      ->check(CLI::Range(1, 5));
  de_pair->add_option("--order", de_order, "subtraction order")
      ->check(CLI::Range(0, 4));
  de_pair->add_option("--shape", de_shape)
      ->check(CLI::IsMember({"bump", "flattop"}));
  de_pair->add_option("--radius", de_radius)->check(CLI::PositiveNumber);
  de_pair->add_option("--weight-shape", de_wshape)
      ->check(CLI::IsMember({"bump", "flattop"}));
  de_pair->add_option("--weight-radius", de_wradius)->check(CLI::PositiveNumber);

  auto* de_bphz = de->add_subcommand("bphz", "momentum-space subtraction demo");
  double de_m = 1.0, de_mu = 2.0;
  std::vector<double> de_cutoffs = {1e2, 1e4, 1e6};
  de_bphz->add_option("--m", de_m)->check(CLI::PositiveNumber);
  de_bphz->add_option("--mu", de_mu)->check(CLI::PositiveNumber);
  de_bphz->add_option("--cutoffs", de_cutoffs)->delimiter(',');

  // schwinger -----------------------------------------------------
  auto* sw = app.add_subcommand("schwinger", "causal polarization tensor");
  sw->require_subcommand(1);
  auto* sw_rhat = sw->add_subcommand("rhat", "subtracted dispersion values");
  double sw_ksq = 1.0;
  std::vector<double> sw_msq = {1e-2, 1e-4, 1e-6};
  sw_rhat->add_option("--ksq", sw_ksq)->check(CLI::PositiveNumber);
  sw_rhat->add_option("--msq-list", sw_msq)->delimiter(',');

  auto* sw_mass = sw->add_subcommand("mass", "dynamically generated mass");
  double sw_e = 1.0;
  sw_mass->add_option("--e", sw_e)->check(CLI::PositiveNumber);

  auto* sw_gauge = sw->add_subcommand("gauge-check",
                                      "naive-cutoff transversality violation");
  std::vector<double> sw_cutoffs = {10.0, 100.0, 1000.0};
  double sw_m = 0.4, sw_k = 1.0;
  sw_gauge->add_option("--cutoff-list", sw_cutoffs)->delimiter(',');
  sw_gauge->add_option("--m", sw_m)->check(CLI::PositiveNumber);
  sw_gauge->add_option("--k", sw_k)->check(CLI::PositiveNumber);

  // anomaly -------------------------------------------------------
  auto* an = app.add_subcommand("anomaly", "test-function-regulated anomaly");
  int an_dim = 4;
  std::string an_profile = "bump";
  double an_lambda = 1.0, an_e = 1.0;
  std::vector<std::string> an_f = {"01=1", "23=1"};
  std::string an_rep = "dirac";
  an->add_option("--dim", an_dim)->check(CLI::IsMember({2, 4}));
  an->add_option("--profile", an_profile)
      ->check(CLI::IsMember({"bump", "flattop"}));
  an->add_option("--lambda", an_lambda)->check(CLI::PositiveNumber);
  an->add_option("--F", an_f, "field strength entries, e.g. 01=1,23=1")
      ->delimiter(',');
  an->add_option("--e", an_e)->check(CLI::PositiveNumber);
  an->add_option("--rep", an_rep)->check(CLI::IsMember({"dirac", "chiral"}));

  // smear ---------------------------------------------------------
  auto* sm = app.add_subcommand("smear", "gauge-covariant grid smearing");
  sm->require_subcommand(1);
  auto* sm_cov = sm->add_subcommand("covariance", "exact covariance defect");
  int sm_n = 64;
  std::uint64_t sm_seed = 7;
  double sm_radius = 0.2;
  sm_cov->add_option("--n", sm_n);
  sm_cov->add_option("--seed", sm_seed);
  sm_cov->add_option("--radius", sm_radius)->check(CLI::PositiveNumber);

  auto* sm_bos = sm->add_subcommand("bosonization", "bosonization reduction");
  int sb_n = 64;
  std::vector<int> sb_mode = {3, 1};
  sm_bos->add_option("--n", sb_n);
  sm_bos->add_option("--mode", sb_mode, "Fourier mode m0,m1")
      ->delimiter(',')
      ->expected(2);

  // verify --------------------------------------------------------
  auto* vf = app.add_subcommand("verify", "run the acceptance suite");
  std::string vf_suite = "all";
  std::uint64_t vf_seed = 1;
  vf->add_option("--suite", vf_suite, "'all' or a check name");
  vf->add_option("--seed", vf_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cl->parsed()) return run_clifford(cl_check, cl_dim, cl_rep);
    if (tf->parsed())
      return run_testfn(tf_shape, tf_radius, tf_center, tf_samples);
    if (de->parsed()) {
      if (de_pair->parsed())
        return run_distext_pair(de_k, de_order, de_shape, de_radius, de_wshape,
                                de_wradius);
      return run_distext_bphz(de_m, de_mu, de_cutoffs);
    }
    if (sw->parsed()) {
      if (sw_rhat->parsed()) return run_schwinger_rhat(sw_ksq, sw_msq);
      if (sw_mass->parsed()) return run_schwinger_mass(sw_e);
      return run_schwinger_gauge_check(sw_cutoffs, sw_m, sw_k);
    }
    if (an->parsed())
      return run_anomaly(an_dim, an_profile, an_lambda, an_f, an_e, an_rep);
    if (sm->parsed()) {
      if (sm_cov->parsed()) return run_smear_covariance(sm_n, sm_seed, sm_radius);
      return run_smear_bosonization(sb_n, sb_mode);
    }
    if (vf->parsed()) return run_verify(vf_suite, vf_seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

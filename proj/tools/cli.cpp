#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entropic/acceptance.hpp"
#include "entropic/conjectures.hpp"
#include "entropic/entropy.hpp"
#include "entropic/equality.hpp"
#include "entropic/error.hpp"
#include "entropic/frontier.hpp"
#include "entropic/io.hpp"
#include "entropic/observables.hpp"
#include "entropic/sampling.hpp"

namespace entropic::cli {
namespace {

using nlohmann::ordered_json;

enum Flag : unsigned {
  kUnitary = 1u << 0,
  kOrders = 1u << 1,
  kSamples = 1u << 2,
  kSeed = 1u << 3,
  kStrategy = 1u << 4,
  kTol = 1u << 5,
  kFormat = 1u << 6,
  kOut = 1u << 7,
  kThreads = 1u << 8,
  kForce = 1u << 9,
  kShape = 1u << 10,
  kState = 1u << 11,
};

struct Flags {
  std::string unitary;
  std::string alpha = "1";
  std::string beta;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string strategy = "haar";
  double tol = 0.0;
  std::string format;
  std::string out;
  std::size_t threads = 1;
  bool force = false;
  std::string shape;
  std::string state;
  bool quick = false;
  int conjecture = 0;

  CLI::Option* samples_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
};

// Several subcommands share one Flags; each registers only what it uses.
void add_flags(CLI::App* app, Flags& f, unsigned mask, std::vector<CLI::Option*>& samples_opts,
               std::vector<CLI::Option*>& tol_opts) {
  if (mask & kUnitary)
    app->add_option("--unitary", f.unitary,
                    "fourier:<d>, group:<n1>x<n2>..., c6, example3, random:<seed>:<d>, file:<path>");
  if (mask & kOrders) {
    app->add_option("--alpha", f.alpha, "Renyi order of the first entropy (\"inf\" allowed)");
    app->add_option("--beta", f.beta, "Renyi order of the second entropy (default: dual of alpha)");
  }
  if (mask & kSamples) samples_opts.push_back(app->add_option("--samples", f.samples, "sample or grid size"));
  if (mask & kSeed) app->add_option("--seed", f.seed, "RNG seed");
  if (mask & kStrategy) app->add_option("--strategy", f.strategy, "haar, real, rrs, basis-mix[:t]");
  if (mask & kTol) tol_opts.push_back(app->add_option("--tol", f.tol, "tolerance or probe threshold"));
  if (mask & kFormat) app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (mask & kOut) app->add_option("--out", f.out, "output path (default stdout)");
  if (mask & kThreads) app->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1, 1024));
  if (mask & kForce) app->add_flag("--force", f.force, "accept file matrices with unitarity defect > 1e-8");
  if (mask & kShape) app->add_option("--shape", f.shape, "AxB");
  if (mask & kState)
    app->add_option("--state", f.state, "JSON array of amplitudes ([re, im] or real), or file:<path>");
}

RenyiOrder parse_order(const std::string& text, const char* what) {
  if (text == "inf" || text == "infinity") return RenyiOrder::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) fail(ErrorCode::ParseError, std::string("bad ") + what + " '" + text + "'");
  return RenyiOrder(v);
}

std::pair<std::size_t, std::size_t> parse_shape(const std::string& text) {
  const auto x = text.find('x');
  auto num = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorCode::ParseError, "shape must be AxB, got '" + text + "'");
    return std::stoul(s);
  };
  if (x == std::string::npos) fail(ErrorCode::ParseError, "shape must be AxB, got '" + text + "'");
  return {num(text.substr(0, x)), num(text.substr(x + 1))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CVector parse_state(const std::string& text) {
  const std::string body = text.starts_with("file:") ? read_file(text.substr(5)) : text;
  ordered_json j;
  try {
    j = ordered_json::parse(body);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("state is not JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, "state must be a non-empty array");
  CVector psi;
  for (const auto& x : j) {
    if (x.is_number()) {
      psi.emplace_back(x.get<double>(), 0.0);
    } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
      psi.emplace_back(x[0].get<double>(), x[1].get<double>());
    } else {
      fail(ErrorCode::ParseError, "state entries must be numbers or [re, im]");
    }
  }
  normalize(psi);
  return psi;
}

std::size_t fourier_dimension(const std::string& spec) {
  if (!spec.starts_with("fourier:")) fail(ErrorCode::ParseError, "this command needs --unitary fourier:<d>");
  return resolve_unitary(spec).dimension();
}

AbelianGroup group_of(const std::string& spec) {
  if (spec.starts_with("fourier:")) return AbelianGroup::cyclic(fourier_dimension(spec));
  if (!spec.starts_with("group:")) fail(ErrorCode::ParseError, "this command needs --unitary fourier:<d> or group:<...>");
  std::vector<std::size_t> orders;
  std::string rest = spec.substr(6);
  while (true) {
    const auto x = rest.find('x');
    const std::string part = rest.substr(0, x);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorCode::ParseError, "bad group order in '" + spec + "'");
    orders.push_back(std::stoul(part));
    if (x == std::string::npos) break;
    rest = rest.substr(x + 1);
  }
  return AbelianGroup(std::move(orders));
}

// Integers keep a trailing ".0" in human-readable text.
std::string text_number(double x) {
  std::string s = format_number(x);
  if (s.find_first_of(".ei") == std::string::npos) s += ".0";
  return s;
}

ordered_json order_json(RenyiOrder a) {
  if (a.is_infinite()) return "inf";
  return round12(a.value());
}

ordered_json vector_json(std::span<const Complex> v) {
  ordered_json j = ordered_json::array();
  for (const Complex& z : v) j.push_back({round12(z.real()), round12(z.imag())});
  return j;
}

ordered_json indices_json(const std::vector<std::size_t>& v) {
  ordered_json j = ordered_json::array();
  for (auto i : v) j.push_back(i);
  return j;
}

std::string set_text(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string space_list(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

class Command {
 public:
  explicit Command(const Flags& f) : f_(f) {}

  ObservablePair unitary() const {
    if (f_.unitary.empty()) fail(ErrorCode::ParseError, "--unitary is required");
    return resolve_unitary(f_.unitary, f_.force);
  }
  RenyiOrder alpha() const { return parse_order(f_.alpha, "--alpha"); }
  RenyiOrder beta() const { return f_.beta.empty() ? dual_order(alpha()) : parse_order(f_.beta, "--beta"); }
  std::size_t samples(std::size_t fallback) const { return f_.samples_opt && f_.samples_opt->count() ? f_.samples : fallback; }
  double tol(double fallback) const { return f_.tol_opt && f_.tol_opt->count() ? f_.tol : fallback; }
  std::string format(const char* fallback) const { return f_.format.empty() ? fallback : f_.format; }

 private:
  const Flags& f_;
};

std::string cmd_mu(const Flags& f) {
  const Command c(f);
  const auto w = c.unitary();
  const auto o = overlap_data(w.matrix());
  const std::string fmt = c.format("text");
  if (fmt == "json") {
    ordered_json j;
    j["unitary"] = w.label();
    j["d"] = w.dimension();
    j["c"] = round12(o.c);
    j["bound_bits"] = round12(o.mu_bound_bits);
    j["inv_c2"] = round12(o.inv_c2);
    j["inv_c2_is_integer"] = o.inv_c2_is_integer;
    return j.dump() + "\n";
  }
  if (fmt == "csv")
    return "c,bound_bits,inv_c2\n" + format_number(o.c) + "," + format_number(o.mu_bound_bits) + "," +
           format_number(o.inv_c2) + "\n";
  return w.label() + ": c=" + format_number(o.c) + ", bound " + text_number(o.mu_bound_bits) + " bits, 1/c^2=" +
         format_number(o.inv_c2) + (o.inv_c2_is_integer ? " (integer)" : "") + "\n";
}

std::string points_json(const DiagramMeta& m, std::span<const EntropyPoint> points, RenyiOrder a, RenyiOrder b) {
  ordered_json j;
  j["unitary"] = m.unitary;
  j["alpha"] = order_json(a);
  j["beta"] = order_json(b);
  j["strategy"] = m.strategy;
  j["n"] = m.n;
  j["seed"] = m.seed;
  ordered_json pts = ordered_json::array();
  for (const auto& p : points) pts.push_back({{"hx", round12(p.hx)}, {"hy", round12(p.hy)}});
  j["points"] = std::move(pts);
  return j.dump() + "\n";
}

DiagramSample draw(const Flags& f, const ObservablePair& w, RenyiOrder a, RenyiOrder b, std::size_t n,
                   bool keep_states, std::ostream& err) {
  SampleOptions so;
  so.threads = f.threads;
  so.keep_states = keep_states;
  auto s = sample_diagram(w, a, b, n, SamplingStrategy::parse(f.strategy), SeededRng(f.seed), so);
  if (s.meta.real_strategy_warning)
    err << "warning: real sampling strategy on a unitary with complex entries; the diagram may be incomplete\n";
  return s;
}

std::string cmd_diagram(const Flags& f, std::ostream& err) {
  const Command c(f);
  const auto w = c.unitary();
  const auto a = c.alpha(), b = c.beta();
  const auto s = draw(f, w, a, b, c.samples(10000), false, err);
  if (c.format("csv") == "json") return points_json(s.meta, s.points, a, b);
  return diagram_csv(s.points);
}

std::string curve_out(const Command& c, const FrontierCurve& curve, const std::string& label, RenyiOrder a,
                      RenyiOrder b) {
  if (c.format("csv") == "json") return frontier_json(curve, label, a, b) + "\n";
  return diagram_csv(curve.points);
}

std::string cmd_frontier(const Flags& f, std::ostream& err) {
  const Command c(f);
  const auto w = c.unitary();
  const auto a = c.alpha(), b = c.beta();
  const auto s = draw(f, w, a, b, c.samples(10000), true, err);
  auto curve = pareto_lower(s.points, s.states);
  if (!a.is_infinite() && !b.is_infinite() && is_dual_pair(a, b)) {
    OptimizeOptions o;
    o.seed = f.seed;
    o.threads = f.threads;
    o.tol = c.tol(o.tol);
    curve = merge(curve, optimized_frontier(w, a, b, 64, o));
  }
  return curve_out(c, curve, w.label(), a, b);
}

std::string cmd_equality_scan(const Flags& f) {
  const Command c(f);
  const auto w = c.unitary();
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  if (!f.shape.empty()) shape = parse_shape(f.shape);
  const auto scan = find_equality_supports(w, c.tol(1e-8), shape);
  const std::string fmt = c.format("text");
  if (fmt == "json") {
    ordered_json j;
    j["unitary"] = w.label();
    j["candidates"] = scan.candidates;
    j["inv_c2_is_integer"] = scan.inv_c2_is_integer;
    ordered_json shapes = ordered_json::array();
    for (const auto& s : scan.shapes)
      shapes.push_back({{"size_x", s.size_x}, {"size_y", s.size_y}, {"candidates", s.candidates}, {"hits", s.hits}});
    j["shapes"] = std::move(shapes);
    ordered_json hits = ordered_json::array();
    for (const auto& h : scan.hits) {
      ordered_json e;
      e["sX"] = indices_json(h.supports.sx);
      e["sY"] = indices_json(h.supports.sy);
      e["verified"] = h.report.is_equality && h.report.structural_ok;
      e["witness"] = vector_json(h.witness);
      hits.push_back(std::move(e));
    }
    j["hits"] = std::move(hits);
    return j.dump() + "\n";
  }
  std::string out;
  if (fmt == "csv") {
    out = "sX,sY,verified\n";
    for (const auto& h : scan.hits)
      out += space_list(h.supports.sx) + "," + space_list(h.supports.sy) + "," +
             (h.report.is_equality && h.report.structural_ok ? "1" : "0") + "\n";
    return out;
  }
  out = std::to_string(scan.hits.size()) + " equality supports among " + std::to_string(scan.candidates) +
        " candidates\n";
  if (!scan.inv_c2_is_integer) out += "1/c^2 is not an integer; no support pair can attain the bound\n";
  for (const auto& h : scan.hits)
    out += "sX=" + set_text(h.supports.sx) + " sY=" + set_text(h.supports.sy) +
           (h.report.is_equality && h.report.structural_ok ? " verified" : " unverified") + "\n";
  return out;
}

std::string cmd_equality_fourier(const Flags& f) {
  const Command c(f);
  if (f.unitary.empty()) fail(ErrorCode::ParseError, "--unitary is required");
  const auto g = group_of(f.unitary);
  const auto classes = fourier_equality_states(g);
  if (c.format("json") == "csv") {
    std::string out = "subgroup_order,h_x,h_y,states,verified\n";
    for (const auto& k : classes)
      out += std::to_string(k.subgroup.size()) + "," + format_number(k.point.hx) + "," + format_number(k.point.hy) +
             "," + std::to_string(k.states.size()) + "," + (k.all_verified ? "1" : "0") + "\n";
    return out;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& k : classes) {
    ordered_json e;
    e["subgroup"] = indices_json(k.subgroup.elements);
    e["annihilator"] = indices_json(k.annihilator.elements);
    e["point"] = {round12(k.point.hx), round12(k.point.hy)};
    e["states"] = k.states.size();
    e["verified"] = k.all_verified;
    arr.push_back(std::move(e));
  }
  ordered_json j;
  j["unitary"] = f.unitary;
  j["classes"] = std::move(arr);
  return j.dump() + "\n";
}

std::string cmd_equality_check(const Flags& f) {
  const Command c(f);
  const auto w = c.unitary();
  if (f.state.empty()) fail(ErrorCode::ParseError, "--state is required");
  const auto psi = parse_state(f.state);
  const auto r = check_equality_state(w, psi, c.alpha(), c.beta(), c.tol(1e-9));
  if (c.format("json") == "csv")
    return "verdict,deficit,h_x,h_y\n" + std::string(r.is_equality ? "equality" : "not_equality") + "," +
           format_number(r.deficit) + "," + format_number(r.point.hx) + "," + format_number(r.point.hy) + "\n";
  return to_json(r) + "\n";
}

std::string cmd_extremality(const Flags& f) {
  const Command c(f);
  CVector psi;
  if (!f.state.empty()) {
    psi = parse_state(f.state);
  } else {
    SeededRng rng(f.seed);
    psi = sample_state(fourier_dimension(f.unitary), SamplingStrategy::parse(f.strategy), rng);
  }
  const auto a = c.alpha();
  const auto r = extremality_residual(psi, a);
  if (c.format("csv") == "json") {
    ordered_json j;
    j["d"] = psi.size();
    j["alpha"] = order_json(a);
    j["max_abs"] = round12(r.max_abs);
    j["fd_mismatch"] = round12(r.fd_mismatch);
    ordered_json res = ordered_json::array(), grad = ordered_json::array();
    for (double x : r.residual) res.push_back(round12(x));
    for (double x : r.phase_gradient) grad.push_back(round12(x));
    j["residual"] = std::move(res);
    j["phase_gradient"] = std::move(grad);
    j["state"] = vector_json(psi);
    return j.dump() + "\n";
  }
  std::string out = "k,r_k,dH_dtheta\n";
  for (std::size_t k = 0; k < r.residual.size(); ++k)
    out += std::to_string(k) + "," + format_number(r.residual[k]) + "," + format_number(r.phase_gradient[k]) + "\n";
  return out;
}

std::string cmd_d2(const Flags& f) {
  const Command c(f);
  const auto w = c.unitary();
  const auto a = c.alpha(), b = c.beta();
  return curve_out(c, d2_exact_curve(w, a, b, c.samples(512)), w.label(), a, b);
}

std::string cmd_englert(const Flags& f) {
  const Command c(f);
  const std::size_t d = fourier_dimension(f.unitary);
  const auto a = c.alpha(), b = c.beta();
  const auto r = englert_curve(d, a, b, c.samples(512));
  if (c.format("csv") == "json") {
    ordered_json j;
    j["d"] = d;
    j["alpha"] = order_json(a);
    j["beta"] = order_json(b);
    j["mu_equality_count"] = r.mu_equality_count;
    ordered_json eq = ordered_json::array(), sweep = ordered_json::array(), front = ordered_json::array();
    for (const auto& p : r.equality_points) eq.push_back({round12(p.hx), round12(p.hy)});
    for (std::size_t i = 0; i < r.sweep.size(); ++i)
      sweep.push_back({{"p1", round12(r.p1[i])}, {"hx", round12(r.sweep[i].hx)}, {"hy", round12(r.sweep[i].hy)}});
    for (const auto& p : r.curve.points) front.push_back({round12(p.hx), round12(p.hy)});
    j["equality_points"] = std::move(eq);
    j["sweep"] = std::move(sweep);
    j["frontier"] = std::move(front);
    return j.dump() + "\n";
  }
  std::string out = "p1,h_x,h_y\n";
  for (std::size_t i = 0; i < r.sweep.size(); ++i)
    out += format_number(r.p1[i]) + "," + format_number(r.sweep[i].hx) + "," + format_number(r.sweep[i].hy) + "\n";
  return out;
}

std::string cmd_conjecture(const Flags& f) {
  const Command c(f);
  ProbeOptions o;
  o.n = c.samples(o.n);
  o.seed = f.seed;
  o.threads = f.threads;
  o.threshold = c.tol(o.threshold);
  const auto a = c.alpha(), b = c.beta();
  ProbeReport r;
  switch (f.conjecture) {
    case 1: {
      if (f.unitary.empty()) fail(ErrorCode::ParseError, "--unitary is required (one spec, or two joined by ',')");
      const auto comma = f.unitary.find(',');
      const auto w1 = resolve_unitary(f.unitary.substr(0, comma), f.force);
      const auto w2 = comma == std::string::npos ? w1 : resolve_unitary(f.unitary.substr(comma + 1), f.force);
      r = probe_product_states(w1, w2, a, b, o);
      break;
    }
    case 2: {
      if (f.shape.empty()) fail(ErrorCode::ParseError, "--shape d1xd2 is required");
      const auto [d1, d2] = parse_shape(f.shape);
      r = probe_fourier_decomposition(d1, d2, a, b, o);
      break;
    }
    case 3: {
      std::vector<OrderPair> others;
      for (auto [x, y] : {std::pair{1.0, 1.0}, {0.75, 1.5}, {0.6, 3.0}, {2.0, 2.0 / 3}}) {
        if (!a.is_infinite() && std::abs(x - a.value()) < 1e-9) continue;
        others.push_back({RenyiOrder(x), RenyiOrder(y)});
      }
      r = probe_alpha_independence(c.unitary(), {a, b}, others, o);
      break;
    }
    case 4: r = probe_rrs_sufficiency(fourier_dimension(f.unitary), a, b, o); break;
    default: fail(ErrorCode::ParseError, "conjecture id must be 1, 2, 3 or 4");
  }
  if (c.format("json") == "csv")
    return "conjecture,unitary,alpha,beta,n,seed,max_abs,signed_max,threshold,verdict\n" +
           std::to_string(r.conjecture) + "," + r.unitary + "," + format_number(r.alpha) + "," +
           format_number(r.beta) + "," + std::to_string(r.n) + "," + std::to_string(r.seed) + "," +
           format_number(r.max_abs) + "," + format_number(r.signed_max) + "," + format_number(r.threshold) + "," +
           r.verdict + "\n";
  return to_json(r) + "\n";
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file || !(file << text)) fail(ErrorCode::ParseError, "cannot write '" + f.out + "'");
}

int cmd_selftest(const Flags& f, std::ostream& out, std::ostream& err) {
  AcceptanceOptions o;
  o.quick = f.quick;
  o.threads = f.threads;
  o.seed = f.seed;
  o.on_result = [&](const CriterionResult& r) { out << format_result_line(r) << std::endl; };
  const auto results = run_acceptance(o);
  std::size_t passed = 0;
  const CriterionResult* first_failure = nullptr;
  ordered_json reports = ordered_json::array();
  for (const auto& r : results) {
    if (r.passed) ++passed;
    else if (!first_failure) first_failure = &r;
    for (const auto& s : r.reports) reports.push_back(ordered_json::parse(s));
  }
  out << passed << "/" << results.size() << " criteria passed\n";
  if (!f.out.empty()) emit(f, reports.dump() + "\n", out);
  if (first_failure) {
    err << "selftest failed: criterion " << first_failure->id << " (" << first_failure->title
        << "): " << first_failure->detail << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic uncertainty diagrams, Maassen-Uffink equality and frontier probes", "entropic"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Flags f;
  std::vector<CLI::Option*> samples_opts, tol_opts;
  auto sub = [&](const char* name, const char* help, unsigned mask, CLI::App* parent = nullptr) {
    CLI::App* s = (parent ? parent : &app)->add_subcommand(name, help);
    add_flags(s, f, mask, samples_opts, tol_opts);
    return s;
  };

  const unsigned io = kFormat | kOut;
  auto* mu = sub("mu", "Maximal overlap c and the bound -log2 c^2", kUnitary | kForce | io);
  auto* diagram = sub("diagram", "Entropy pairs of sampled pure states",
                      kUnitary | kOrders | kSamples | kSeed | kStrategy | kThreads | kForce | io);
  auto* frontier = sub("frontier", "Lower frontier from samples and constrained minimization",
                       kUnitary | kOrders | kSamples | kSeed | kStrategy | kTol | kThreads | kForce | io);
  auto* equality = app.add_subcommand("equality", "Equality states of the entropic bound");
  equality->require_subcommand(1);
  auto* scan = sub("scan", "Enumerate support pairs that attain the bound", kUnitary | kTol | kShape | kForce | io,
                   equality);
  auto* fourier = sub("fourier", "Subgroup indicator states of an abelian group", kUnitary | io, equality);
  auto* check = sub("check", "Verdict for one state", kUnitary | kOrders | kState | kTol | kForce | io, equality);
  auto* extremality = sub("extremality", "Phase-stationarity residual of a state under the cyclic Fourier transform",
                          kUnitary | kOrders | kState | kSeed | kStrategy | io);
  auto* d2 = sub("d2", "Closed-form qubit frontier", kUnitary | kOrders | kSamples | kForce | io);
  auto* englert = sub("englert", "One-parameter family under the cyclic Fourier transform",
                      kUnitary | kOrders | kSamples | io);
  auto* conjecture = sub("conjecture", "Numerical probe of a frontier conjecture",
                         kUnitary | kOrders | kSamples | kSeed | kTol | kThreads | kForce | kShape | io);
  conjecture->add_option("id", f.conjecture, "1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_flag("--quick", f.quick, "reduced sample sizes, same tolerances");
  selftest->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1, 1024));
  selftest->add_option("--seed", f.seed, "RNG seed");
  selftest->add_option("--out", f.out, "write probe reports (JSON) here");

  std::vector<const char*> argv{"entropic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const CLI::App* s = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); s;
         s = s->get_subcommands().empty() ? nullptr : s->get_subcommands().front())
      target = s;
    out << target->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (auto* o : samples_opts)
    if (o->count()) f.samples_opt = o;
  for (auto* o : tol_opts)
    if (o->count()) f.tol_opt = o;

  try {
    if (selftest->parsed()) return cmd_selftest(f, out, err);
    std::string text;
    if (mu->parsed()) text = cmd_mu(f);
    else if (diagram->parsed()) text = cmd_diagram(f, err);
    else if (frontier->parsed()) text = cmd_frontier(f, err);
    else if (scan->parsed()) text = cmd_equality_scan(f);
    else if (fourier->parsed()) text = cmd_equality_fourier(f);
    else if (check->parsed()) text = cmd_equality_check(f);
    else if (extremality->parsed()) text = cmd_extremality(f);
    else if (d2->parsed()) text = cmd_d2(f);
    else if (englert->parsed()) text = cmd_englert(f);
    else if (conjecture->parsed()) text = cmd_conjecture(f);
    emit(f, text, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical_failure(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace entropic::cli

// Command-line front end for elliptic loops over Z/p^eZ.
//
// Exit status: 0 when the requested property holds, 1 when it is falsified
// (a counterexample or a failing check is printed), 2 on usage errors and on
// instances rejected by the library.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eloop/diagnostics.hpp"
#include "eloop/layers.hpp"
#include "eloop/serialize.hpp"
#include "eloop/structure.hpp"
#include "eloop/verify.hpp"

namespace {

using namespace eloop;
using Pt = LoopPoint<ZpeElem>;

constexpr int kHolds = 0;
constexpr int kFalsified = 1;
constexpr int kUsage = 2;

struct Options {
  std::uint32_t p = 5;
  std::uint32_t e = 2;
  std::int64_t a = 2;
  std::int64_t b = 1;
  std::string suite = "all";
  std::string type = "A";
  std::vector<std::string> points;
  std::int64_t n = 1;
  std::optional<std::int64_t> t;
  std::int64_t q = 1;
  std::uint64_t seed = 1;
  std::uint64_t budget = 1000000;
  std::string format = "text";
  std::uint32_t max_p = 17;
  std::uint64_t max_ring = 300;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  explicit Runner(const Options& o)
      : o_(o), cfg_(RingConfig::integer_quotient(o.p, o.e)), loop_(Loop<ZpeElem>::create(cfg_, o.a, o.b)) {}

  bool as_json() const { return o_.format == "json"; }

  Pt parse_point(const std::string& text) const {
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw UsageError("bad coordinate '" + part + "' in point '" + text + "'");
      }
    }
    if (v.size() != 3) throw UsageError("a point is X,Y,Z; got '" + text + "'");
    return loop_.point(v[0], v[1], v[2]);
  }

  std::vector<Pt> points(std::size_t want) const {
    if (o_.points.size() != want)
      throw UsageError("expected " + std::to_string(want) + " --point value(s), got " + std::to_string(o_.points.size()));
    std::vector<Pt> out;
    for (const auto& s : o_.points) out.push_back(parse_point(s));
    return out;
  }

  json header() const { return json{{"ring", to_json(cfg_)}, {"A", o_.a}, {"B", o_.b}}; }

  std::string show(const Pt& P) const {
    std::ostringstream os;
    os << P;
    return os.str();
  }

  int emit(json j, const std::string& text, int code) const {
    if (as_json()) {
      j.update(header());
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << text;
    }
    return code;
  }

  int add() const {
    const auto pts = points(2);
    const auto S = loop_.add(pts[0], pts[1]);
    return emit({{"sum", to_json(S)}}, show(S) + "\n", kHolds);
  }

  int mul() const {
    const auto pts = points(1);
    const auto S = loop_.mul(o_.n, pts[0]);
    return emit({{"n", o_.n}, {"product", to_json(S)}}, show(S) + "\n", kHolds);
  }

  int order() const {
    const auto pts = points(1);
    const auto n = loop_.order_of(pts[0]);
    return emit({{"order", n}}, std::to_string(n) + "\n", kHolds);
  }

  int membership() const {
    if (o_.points.size() != 1) throw UsageError("membership takes one --point");
    bool member = true;
    std::string why;
    try {
      parse_point(o_.points[0]);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NotOnLoop && err.kind() != ErrorKind::NotPrimitive) throw;
      member = false;
      why = err.what();
    }
    return emit({{"member", member}}, member ? "on loop\n" : "not on loop: " + why + "\n", member ? kHolds : kFalsified);
  }

  int stratify_cmd() const {
    const auto pts = points(1);
    const auto t = stratify(loop_, pts[0]);
    return emit({{"t", t.value()}}, "t = " + std::to_string(t.value()) + "\n", kHolds);
  }

  int decompose() const {
    const auto pts = points(1);
    const auto d = infinity_decompose(loop_, pts[0]);
    return emit({{"decomposition", to_json(d)}},
                "alpha = " + std::to_string(d.alpha) + ", beta = " + std::to_string(d.beta) + "\n", kHolds);
  }

  int layers() const {
    std::vector<Layer<ZpeElem>> selected;
    if (o_.t)
      selected.emplace_back(loop_, loop_.elem(*o_.t));
    else
      selected = all_layers(loop_);
    json arr = json::array();
    std::ostringstream os;
    for (const auto& layer : selected) {
      const auto s = summarize_layer(layer);
      arr.push_back(to_json(s));
      os << "t=" << s.t << " Z_t=" << s.z_t << " |L_t|=" << s.cardinality << " |L_t^inf|=" << s.infinity_order
         << " structure=";
      for (std::size_t i = 0; i < s.group_structure.size(); ++i) os << (i ? " x " : "") << "Z/" << s.group_structure[i];
      if (s.group_structure.empty()) os << "trivial";
      os << '\n';
    }
    return emit({{"layers", arr}}, os.str(), kHolds);
  }

  int torsion() const {
    const auto pts = points(1);
    const auto fiber = torsion_fiber(loop_, o_.q, pts[0]);
    json j{{"q", o_.q}};
    json fj = json::array();
    std::ostringstream os;
    os << "fiber (" << fiber.size() << " points):";
    for (const auto& Q : fiber) {
      fj.push_back(to_json(Q));
      os << ' ' << Q;
    }
    os << '\n';
    j["fiber"] = fj;
    int code = kHolds;
    if (cfg_.nilpotency() <= 2 && !fiber.empty()) {
      const auto D = difference_group(loop_, o_.q, pts[0]);
      const auto line = torsion_line(loop_, pts[0], difference_group_generator(loop_, D));
      j["difference_group_size"] = D.elements.size();
      j["subgroup_of_infinity"] = D.subgroup_of_infinity;
      j["translates_onto_fiber"] = D.translates_onto_fiber;
      j["line"] = to_json(line.line);
      if (line.reduced) j["reduced_line"] = to_json(*line.reduced);
      j["degenerate"] = line.degenerate;
      os << "difference group: " << D.elements.size() << " elements, subgroup of L^inf: "
         << (D.subgroup_of_infinity ? "yes" : "no") << ", P + D = fiber: " << (D.translates_onto_fiber ? "yes" : "no")
         << '\n';
      os << "line: " << to_json(line.line).dump() << (line.degenerate ? " (degenerate)" : "") << '\n';
      if (line.reduced) os << "reduced line: " << to_json(*line.reduced).dump() << '\n';
      if (!D.subgroup_of_infinity || !D.translates_onto_fiber) code = kFalsified;
    }
    return emit(j, os.str(), code);
  }

  int verify() const {
    const auto results = run_suite(loop_, o_.suite, o_.budget, o_.seed);
    bool all = true;
    json arr = json::array();
    std::ostringstream os;
    for (const auto& r : results) {
      all = all && r.passed;
      json cj = json::array();
      for (const auto& P : r.counterexample) cj.push_back(to_json(P));
      arr.push_back({{"suite", r.suite},
                     {"check", r.check},
                     {"passed", r.passed},
                     {"applicable", r.applicable},
                     {"exhaustive", r.exhaustive},
                     {"checked", r.checked},
                     {"detail", r.detail},
                     {"counterexample", r.passed ? json::array() : cj},
                     {"parameters", r.parameters}});
      os << (r.applicable ? (r.passed ? "pass " : "FAIL ") : "n/a  ") << r.suite << '/' << r.check;
      if (r.applicable) os << " (" << r.checked << (r.exhaustive ? ", exhaustive)" : ", sampled)");
      if (!r.detail.empty()) os << " " << r.detail;
      if (!r.passed) {
        os << " counterexample:";
        for (const auto& P : r.counterexample) os << ' ' << P;
      }
      os << '\n';
    }
    return emit({{"seed", o_.seed}, {"budget", o_.budget}, {"results", arr}, {"verified", all}}, os.str(),
                all ? kHolds : kFalsified);
  }

  int witness() const {
    std::optional<Pt> P;
    if (!o_.points.empty()) P = points(1)[0];
    Witness<ZpeElem> w;
    if (o_.type == "A")
      w = witness_A(loop_, P);
    else if (o_.type == "B")
      w = witness_B(loop_, P);
    else if (o_.type == "inf")
      w = witness_inf(loop_);
    else
      throw UsageError("--type is A, B or inf");
    std::ostringstream os;
    os << "triple:";
    for (const auto& Q : w.triple) os << ' ' << Q;
    os << "\n(P1+P2)+P3 = " << w.left << "\nP1+(P2+P3) = " << w.right << '\n'
       << (w.associates ? "associates\n" : "not associative\n");
    return emit({{"witness", to_json(w)}}, os.str(), w.associates ? kHolds : kFalsified);
  }

  int enumerate() const {
    const auto pts = loop_.points();
    json arr = json::array();
    std::ostringstream os;
    os << pts.size() << " points\n";
    for (const auto& P : pts) {
      arr.push_back(to_json(P));
      os << P << '\n';
    }
    return emit({{"count", pts.size()}, {"points", arr}}, os.str(), kHolds);
  }

 private:
  const Options& o_;
  RingConfig cfg_;
  Loop<ZpeElem> loop_;
};

int classify(const Options& o) {
  ClassificationOptions co;
  co.max_p = o.max_p;
  co.max_ring_size = o.max_ring;
  co.seed = o.seed;
  co.sample_budget = std::min<std::uint64_t>(o.budget, 20000);
  const auto result = classify_group_loops(co);
  if (o.format == "json") {
    auto entry = [](const ClassificationEntry& c) {
      return json{{"p", c.p},       {"e", c.e},
                  {"A", c.a},       {"B", c.b},
                  {"size", c.size}, {"invariant_factors", c.invariant_factors},
                  {"method", c.method}};
    };
    json groups = json::array(), undecided = json::array();
    for (const auto& c : result.groups) groups.push_back(entry(c));
    for (const auto& c : result.undecided) undecided.push_back(entry(c));
    std::cout << json{{"loops_examined", result.loops_examined}, {"groups", groups}, {"undecided", undecided}}.dump(2)
              << '\n';
  } else {
    std::cout << classification_csv(result);
  }
  return result.undecided.empty() ? kHolds : kFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic loops over Z/p^eZ"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"add", "P + Q for two --point values"},
      {"mul", "n P"},
      {"order", "order of a point"},
      {"membership", "whether a triple lies on the loop"},
      {"stratify", "the layer parameter t of an affine point"},
      {"decompose", "alpha, beta with P = alpha (p:1:0) + beta (0:1:p)"},
      {"layers", "layer summaries, for one --t or all"},
      {"torsion", "the torsion fiber of --point for --q"},
      {"verify", "run a verification suite"},
      {"classify", "list the loops that are groups"},
      {"witness", "a non-associative triple of the given --type"},
      {"enumerate", "list every point"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-p", o.p, "prime");
    sub->add_option("-e", o.e, "exponent");
    sub->add_option("-A", o.a, "curve coefficient A");
    sub->add_option("-B", o.b, "curve coefficient B");
    sub->add_option("--point", o.points, "point as X,Y,Z (repeatable)");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", o.seed, "seed for sampled checks");
    sub->add_option("--budget", o.budget, "maximum number of tuples per check");
    if (name == "mul") sub->add_option("-n,--n", o.n, "multiplier");
    if (name == "layers") sub->add_option("--t", o.t, "layer parameter (an element of pZ/p^eZ)");
    if (name == "torsion") sub->add_option("--q", o.q, "torsion order");
    if (name == "verify") sub->add_option("--suite", o.suite, "suite name or all");
    if (name == "witness") sub->add_option("--type", o.type, "A, B or inf");
    if (name == "classify") {
      sub->add_option("--max-p", o.max_p, "largest prime");
      sub->add_option("--max-ring", o.max_ring, "largest p^e");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "classify") return classify(o);
    const Runner r(o);
    if (cmd == "add") return r.add();
    if (cmd == "mul") return r.mul();
    if (cmd == "order") return r.order();
    if (cmd == "membership") return r.membership();
    if (cmd == "stratify") return r.stratify_cmd();
    if (cmd == "decompose") return r.decompose();
    if (cmd == "layers") return r.layers();
    if (cmd == "torsion") return r.torsion();
    if (cmd == "verify") return r.verify();
    if (cmd == "witness") return r.witness();
    if (cmd == "enumerate") return r.enumerate();
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kUsage;
  } catch (const Error& err) {
    std::cerr << err.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

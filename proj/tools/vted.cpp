// Command-line front end: tree edit distances with variables, system
// distances, gadget generators and cost validation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vted/parse.hpp"
#include "vted/reductions.hpp"
#include "vted/system_dist.hpp"
#include "vted/ted_ordered.hpp"
#include "vted/ted_unordered.hpp"
#include "vted/var_dist.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace vted;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitMetric = 3;

struct CommonOptions {
  std::string cost_file;
  std::uint64_t budget = SearchLimits{}.max_expansions;
  double timeout = SearchLimits{}.max_seconds;
  int jobs = 0;  // 0: take VTED_JOBS, else 1
  std::string format = "table";
  bool witness = false;
};

int effective_jobs(const CommonOptions& opts) {
  if (opts.jobs > 0) return opts.jobs;
  if (const char* env = std::getenv("VTED_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

SearchLimits limits_of(const CommonOptions& opts) {
  SearchLimits limits;
  limits.max_expansions = opts.budget;
  limits.max_seconds = opts.timeout;
  return limits;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Tree load_tree(const std::string& path) {
  std::string text = read_file(path);
  if (ends_with(path, ".tree")) return parse_tree_dump(text);
  return parse_expr(text);
}

OdeSystem load_system(const std::string& path) {
  std::vector<ParseWarning> warnings;
  OdeSystem sys = parse_system(read_file(path), &warnings);
  for (const ParseWarning& w : warnings)
    std::cerr << path << ":" << w.span.line << ": warning: " << w.message
              << "\n";
  return sys;
}

struct MetricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Loads and metric-checks the cost model; throws MetricError on violation.
CostModel load_cost(const CommonOptions& opts) {
  CostModel c = opts.cost_file.empty()
                    ? CostModel::unit()
                    : parse_cost_file(read_file(opts.cost_file));
  if (auto violation = c.validate_metric())
    throw MetricError("cost model is not a metric: " + violation->to_string());
  return c;
}

TreeOrder parse_mode(const std::string& mode) {
  if (mode == "ordered") return TreeOrder::Ordered;
  if (mode == "unordered") return TreeOrder::Unordered;
  throw std::runtime_error("--mode must be 'ordered' or 'unordered'");
}

json mapping_json(const EditMapping& m) {
  json out = json::array();
  for (const auto& [v, w] : m.pairs) out.push_back(json::array({v, w}));
  return out;
}

json theta_json(const Substitution& theta) {
  json out = json::array();
  for (const auto& [x, y] : theta.matches) out.push_back(json::array({x, y}));
  return out;
}

void emit(const CommonOptions& opts, const json& payload) {
  if (opts.format == "json") {
    std::cout << payload.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : payload.items()) {
    if (value.is_array()) {
      std::cout << key << ":";
      for (const auto& item : value) std::cout << " " << item.dump();
      std::cout << "\n";
    } else {
      std::cout << key << ": "
                << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
    }
  }
}

class Stopwatch {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

int run_ted(const std::string& f1, const std::string& f2,
            const std::string& mode, const CommonOptions& opts) {
  Tree t1 = load_tree(f1), t2 = load_tree(f2);
  CostModel c = load_cost(opts);
  TreeOrder order = parse_mode(mode);
  Stopwatch clock;
  TedResult r = order == TreeOrder::Ordered
                    ? ted_ordered(t1, t2, c)
                    : ted_unordered(t1, t2, c, limits_of(opts));
  json out;
  out["command"] = "ted";
  out["mode"] = mode;
  out["distance"] = r.distance;
  out["optimal"] = r.optimal;
  if (opts.witness) out["witness"] = mapping_json(r.mapping);
  out["wall_ms"] = clock.ms();
  emit(opts, out);
  return r.optimal ? kExitOk : kExitBudget;
}

int run_vted(const std::string& f1, const std::string& f2,
             const std::string& mode, double threshold, bool has_threshold,
             const CommonOptions& opts) {
  Tree t1 = load_tree(f1), t2 = load_tree(f2);
  CostModel c = load_cost(opts);
  VarDistOptions vo;
  vo.mode = parse_mode(mode);
  vo.limits = limits_of(opts);
  vo.jobs = effective_jobs(opts);

  if (has_threshold) {
    Stopwatch clock;
    ThresholdAnswer ans = dist_at_most(t1, t2, threshold, c, vo);
    json out;
    out["command"] = "vted";
    out["mode"] = mode;
    out["threshold"] = threshold;
    out["answer"] = ans == ThresholdAnswer::Yes
                        ? "yes"
                        : (ans == ThresholdAnswer::No ? "no" : "unknown");
    out["wall_ms"] = clock.ms();
    emit(opts, out);
    return ans == ThresholdAnswer::Unknown ? kExitBudget : kExitOk;
  }

  Stopwatch clock;
  VarDistResult r = dist_with_vars(t1, t2, c, vo);
  json out;
  out["command"] = "vted";
  out["mode"] = mode;
  out["distance"] = r.distance;
  out["optimal"] = r.optimal;
  out["substitutions"] = r.substitutions_enumerated;
  out["theta"] = theta_json(r.theta);
  if (opts.witness) out["witness"] = mapping_json(r.mapping);
  out["wall_ms"] = clock.ms();
  emit(opts, out);
  return r.optimal ? kExitOk : kExitBudget;
}

int run_iso(const std::string& f1, const std::string& f2,
            const std::string& mode, const CommonOptions& opts) {
  Tree t1 = load_tree(f1), t2 = load_tree(f2);
  json out;
  out["command"] = "iso";
  out["mode"] = mode;
  if (parse_mode(mode) == TreeOrder::Ordered) {
    out["isomorphic"] = iso_ordered_vars(t1, t2) ? "yes" : "no";
    emit(opts, out);
    return kExitOk;
  }
  CostModel c = load_cost(opts);
  VarDistOptions vo;
  vo.limits = limits_of(opts);
  vo.jobs = effective_jobs(opts);
  ThresholdAnswer ans = dist_at_most(t1, t2, 0.0, c, vo);
  out["isomorphic"] = ans == ThresholdAnswer::Yes
                          ? "yes"
                          : (ans == ThresholdAnswer::No ? "no" : "unknown");
  emit(opts, out);
  return ans == ThresholdAnswer::Unknown ? kExitBudget : kExitOk;
}

json system_json(const char* command, const SystemDistResult& r,
                 std::int64_t wall_ms) {
  json out;
  out["command"] = command;
  out["distance"] = r.distance;
  out["optimal"] = r.optimal;
  out["swapped"] = r.swapped;
  json pairing = json::array();
  for (const auto& [i, j] : r.pairing)
    pairing.push_back(json::array({i + 1, j + 1}));  // 1-based equations
  out["pairing"] = pairing;
  json deleted = json::array();
  for (int j : r.deleted) deleted.push_back(j + 1);
  out["deleted"] = deleted;
  out["per_pair"] = r.per_pair;
  out["deletion_costs"] = r.deletion_costs;
  out["wall_ms"] = wall_ms;
  return out;
}

int run_system(const char* command, const std::string& f1,
               const std::string& f2, const CommonOptions& opts) {
  OdeSystem sx = load_system(f1), sy = load_system(f2);
  CostModel c = load_cost(opts);
  SystemOptions so;
  so.limits = limits_of(opts);
  so.jobs = effective_jobs(opts);
  Stopwatch clock;
  SystemDistResult r = std::string(command) == "sysdist"
                           ? system_dist(sx, sy, c, so)
                           : system_pdist(sx, sy, c, so);
  emit(opts, system_json(command, r, clock.ms()));
  return r.optimal ? kExitOk : kExitBudget;
}

int run_reduce_clique(const std::string& graph_file, int k,
                      const CommonOptions& opts) {
  LabeledGraph g = parse_graph_file(read_file(graph_file));
  CliqueInstance inst = clique_to_trees(g, k);
  json out;
  out["command"] = "reduce-clique";
  out["k"] = k;
  out["t1"] = dump_tree(inst.t1);
  out["t2"] = dump_tree(inst.t2);
  out["threshold"] = inst.threshold;
  emit(opts, out);
  return kExitOk;
}

int run_gadget_gi(const std::string& tree_file, bool bounded,
                  const CommonOptions& opts) {
  Tree t = load_tree(tree_file);
  LabeledGraph g = bounded ? gi_gadget_bounded(t) : gi_gadget(t);
  if (opts.format == "json") {
    json out;
    out["command"] = "gadget-gi";
    out["bounded"] = bounded;
    out["graph"] = dump_graph(g);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << dump_graph(g);
  }
  return kExitOk;
}

int run_validate_cost(const std::string& file, const CommonOptions& opts) {
  CostModel c = parse_cost_file(read_file(file));
  json out;
  out["command"] = "validate-cost";
  if (auto violation = c.validate_metric()) {
    out["valid"] = false;
    out["violation"] = violation->to_string();
    emit(opts, out);
    return kExitMetric;
  }
  out["valid"] = true;
  emit(opts, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact tree edit distance with variables, and distances "
               "between systems of differential equations"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto add_common = [&](CLI::App* cmd, bool with_witness = false) {
    cmd->add_option("--cost", opts.cost_file, "cost model file (default: unit)");
    cmd->add_option("--budget", opts.budget, "node-expansion limit");
    cmd->add_option("--timeout", opts.timeout, "wall-clock limit in seconds");
    cmd->add_option("--jobs", opts.jobs, "worker threads (VTED_JOBS fallback)");
    cmd->add_option("--format", opts.format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    if (with_witness)
      cmd->add_flag("--witness", opts.witness, "include the mapping witness");
  };

  std::string f1, f2, mode = "ordered";
  double threshold = 0.0;

  CLI::App* ted = app.add_subcommand("ted", "variable-free tree edit distance");
  ted->add_option("t1", f1)->required();
  ted->add_option("t2", f2)->required();
  ted->add_option("--mode", mode, "ordered or unordered")->required();
  add_common(ted, true);

  CLI::App* vted =
      app.add_subcommand("vted", "tree edit distance with variables");
  vted->add_option("t1", f1)->required();
  vted->add_option("t2", f2)->required();
  vted->add_option("--mode", mode, "ordered or unordered")->required();
  CLI::Option* thr =
      vted->add_option("--threshold", threshold, "decide dist <= d only");
  add_common(vted, true);

  CLI::App* iso = app.add_subcommand("iso", "zero-distance test");
  iso->add_option("t1", f1)->required();
  iso->add_option("t2", f2)->required();
  iso->add_option("--mode", mode, "ordered or unordered")->required();
  add_common(iso);

  CLI::App* sysdist =
      app.add_subcommand("sysdist", "system distance (global substitution)");
  sysdist->add_option("sx", f1)->required();
  sysdist->add_option("sy", f2)->required();
  add_common(sysdist);

  CLI::App* syspdist =
      app.add_subcommand("syspdist", "pseudo system distance (matching)");
  syspdist->add_option("sx", f1)->required();
  syspdist->add_option("sy", f2)->required();
  add_common(syspdist);

  int clique_k = 0;
  CLI::App* reduce =
      app.add_subcommand("reduce-clique", "emit the clique gadget trees");
  reduce->add_option("graph", f1)->required();
  reduce->add_option("k", clique_k)->required();
  add_common(reduce);

  bool bounded = false;
  CLI::App* gadget =
      app.add_subcommand("gadget-gi", "emit the zero-distance gadget graph");
  gadget->add_option("tree", f1)->required();
  gadget->add_flag("--bounded", bounded, "bounded-degree variant");
  add_common(gadget);

  CLI::App* validate =
      app.add_subcommand("validate-cost", "metric-check a cost file");
  validate->add_option("file", f1)->required();
  add_common(validate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(ted)) return run_ted(f1, f2, mode, opts);
    if (app.got_subcommand(vted))
      return run_vted(f1, f2, mode, threshold, thr->count() > 0, opts);
    if (app.got_subcommand(iso)) return run_iso(f1, f2, mode, opts);
    if (app.got_subcommand(sysdist)) return run_system("sysdist", f1, f2, opts);
    if (app.got_subcommand(syspdist))
      return run_system("syspdist", f1, f2, opts);
    if (app.got_subcommand(reduce))
      return run_reduce_clique(f1, clique_k, opts);
    if (app.got_subcommand(gadget)) return run_gadget_gi(f1, bounded, opts);
    if (app.got_subcommand(validate)) return run_validate_cost(f1, opts);
  } catch (const MetricError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMetric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddwl/coherent.hpp"
#include "ddwl/construction.hpp"
#include "ddwl/designs.hpp"
#include "ddwl/isotest.hpp"
#include "ddwl/suite.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

constexpr std::uint32_t kDefaultMaxQ = 11;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint32_t max_q() {
  const char* env = std::getenv("DDWL_MAX_Q");
  if (env == nullptr || *env == '\0') return kDefaultMaxQ;
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(env, &used);
    if (used != std::string(env).size() || v == 0 || v > 1000) throw std::invalid_argument(env);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("DDWL_MAX_Q must be a positive integer, got '") + env + "'");
  }
}

std::uint32_t vertex_cap(std::uint32_t q) {
  const std::uint32_t n = q * q * q;
  return n > ddwl::kDefaultMaxVertices ? n : ddwl::kDefaultMaxVertices;
}

/// Validates q against the cap and the field rules before anything is built.
ddwl::Family family_for(std::uint32_t q) {
  const std::uint32_t cap = max_q();
  if (q % 2 == 0) throw UsageError("q must be odd, got " + std::to_string(q));
  if (!ddwl::prime_power(q)) throw UsageError(std::to_string(q) + " is not a prime power");
  if (q > cap) throw UsageError("q = " + std::to_string(q) + " exceeds the cap " + std::to_string(cap) + " (DDWL_MAX_Q)");
  try {
    return ddwl::Family::of_order(q, q);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ddwl::Fe element_for(const ddwl::Family& fam, std::uint32_t i) {
  if (i >= fam.q()) {
    throw UsageError("i must be a field element index below " + std::to_string(fam.q()) + ", got " + std::to_string(i));
  }
  return fam.field().at(i);
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

nlohmann::json legend(const ddwl::Family& fam) {
  const auto& f = fam.field();
  auto elems = nlohmann::json::array();
  for (std::uint32_t k = 0; k < fam.q(); ++k) elems.push_back(f.to_string(f.at(k)));
  return {{"vertex_index", "ix*q^2 + iy*q + iz for the group element (x, y, z)"},
          {"field", ddwl::field_json(f.spec())},
          {"element_of_index", elems},
          {"multiplication", "(x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2)"},
          {"arc", "u -> v iff v*u^-1 in the connection set"}};
}

int cmd_build(std::uint32_t q, std::uint32_t i, bool loopless, const std::string& out) {
  const ddwl::Family fam = family_for(q);
  const ddwl::Fe fi = element_for(fam, i);
  const ddwl::Digraph g = fam.build_cayley(fi, !loopless, vertex_cap(q));
  nlohmann::json info{{"q", q}, {"i", fam.field().to_string(fi)}, {"vertices", g.size()}, {"arcs", g.arc_count()},
                      {"loops", g.has_loops()}, {"legend", legend(fam)}};
  if (out.empty()) {
    g.write_text(std::cout);
    std::cerr << info.dump(2) << '\n';
  } else {
    write_file(out, g.to_text());
    info["file"] = out;
    emit(info);
  }
  return kExitPass;
}

int cmd_verify(std::uint32_t q, const std::string& suite, bool timings, std::uint64_t max_nodes) {
  family_for(q);
  ddwl::SuiteOptions opts;
  opts.mode = suite == "fast" ? ddwl::SuiteMode::fast : ddwl::SuiteMode::full;
  opts.search.max_nodes = max_nodes;
  const ddwl::RunReport rep = ddwl::run_suite(q, opts, vertex_cap(q));
  emit(rep.to_json(timings));
  return rep.passed() ? kExitPass : kExitFail;
}

int cmd_wl(std::uint32_t q, std::uint32_t i, bool loopless, const std::string& tensor_out) {
  const ddwl::Family fam = family_for(q);
  const ddwl::Fe fi = element_for(fam, i);
  const ddwl::Digraph g = fam.build_cayley(fi, !loopless, vertex_cap(q));
  const ddwl::CoherentConfiguration cc = ddwl::wl_close(g);
  nlohmann::json tensor = cc.tensor_json();
  const ddwl::Partition cells = ddwl::as_sring_partition(cc, fam.group());
  nlohmann::json out{{"q", q},
                     {"i", fam.field().to_string(fi)},
                     {"rank", cc.rank()},
                     {"rounds", cc.rounds()},
                     {"fibers", cc.fibers().size()},
                     {"e_row_cells", cells.size()},
                     {"e_row_matches_basic_sets", cells == ddwl::normalized(fam.basic_sets())}};
  if (tensor_out.empty()) {
    out["tensor"] = std::move(tensor);
  } else {
    write_file(tensor_out, tensor.dump(2) + "\n");
    out["tensor_file"] = tensor_out;
  }
  emit(out);
  return kExitPass;
}

int cmd_iso(std::uint32_t q, std::uint64_t max_nodes) {
  const ddwl::Family fam = family_for(q);
  std::vector<ddwl::Digraph> graphs;
  auto names = nlohmann::json::array();
  for (ddwl::Fe i : fam.generators_I()) {
    graphs.push_back(fam.build_cayley(i, true, vertex_cap(q)));
    names.push_back(fam.field().to_string(i));
  }
  const ddwl::IsoClassResult res = ddwl::iso_class_count(graphs, {max_nodes});
  auto pairs = nlohmann::json::array();
  for (std::size_t a = 0; a < graphs.size(); ++a) {
    for (std::size_t b = a + 1; b < graphs.size(); ++b) {
      pairs.push_back({{"i", names[a]}, {"j", names[b]}, {"result", ddwl::to_string(res.pairwise[a][b])}});
    }
  }
  emit({{"q", q},
        {"I", names},
        {"classes", res.classes},
        {"exact", res.exact},
        {"class_of", res.class_of},
        {"pairs", pairs},
        {"nodes", res.nodes}});
  return res.exact ? kExitPass : kExitFail;
}

int cmd_design(std::uint32_t q, std::uint32_t i, bool sampled) {
  const ddwl::Family fam = family_for(q);
  const ddwl::Fe fi = element_for(fam, i);
  const auto rep = ddwl::verify_design_iso(fam, fi, sampled ? ddwl::PairCheck::sampled : ddwl::PairCheck::exhaustive);
  emit(rep.to_json());
  return rep.crit_holds && rep.det_a_nonzero ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisible design digraphs over H3(q) and their WL invariants"};
  app.set_version_flag("--version", std::string(ddwl::kVersion));
  app.require_subcommand(1);

  std::uint32_t q = 0;
  std::uint32_t i = 0;
  bool loopless = false;
  bool no_timings = false;
  bool sampled = false;
  std::string out;
  std::string tensor_out;
  std::string suite = "full";
  std::uint64_t max_nodes = ddwl::kDefaultNodeBudget;

  auto* build = app.add_subcommand("build", "Write the adjacency matrix of Gamma_i");
  build->add_option("q", q, "Field order")->required();
  build->add_option("i", i, "Field element index")->required();
  build->add_flag("--loopless", loopless, "Use Y_i instead of X_i");
  build->add_option("--out", out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("q", q, "Field order")->required();
  verify->add_option("--suite", suite, "full or fast")->check(CLI::IsMember({"full", "fast"}));
  verify->add_flag("--no-timings", no_timings, "Omit timings for byte-identical output");
  verify->add_option("--max-nodes", max_nodes, "Search node budget");

  auto* wl = app.add_subcommand("wl", "2-WL closure of Gamma_i");
  wl->add_option("q", q, "Field order")->required();
  wl->add_option("i", i, "Field element index")->required();
  wl->add_flag("--loopless", loopless, "Use Y_i instead of X_i");
  wl->add_option("--tensor-out", tensor_out, "Write the intersection tensor here");

  auto* iso = app.add_subcommand("iso", "Isomorphism classes of Gamma_i, i in I");
  iso->add_option("q", q, "Field order")->required();
  iso->add_option("--max-nodes", max_nodes, "Search node budget");

  auto* design = app.add_subcommand("design", "Check the design isomorphism for one i");
  design->add_option("q", q, "Field order")->required();
  design->add_option("i", i, "Field element index")->required();
  design->add_flag("--sampled", sampled, "Fixed-seed sample instead of all pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*build) return cmd_build(q, i, loopless, out);
    if (*verify) return cmd_verify(q, suite, !no_timings, max_nodes);
    if (*wl) return cmd_wl(q, i, loopless, tensor_out);
    if (*iso) return cmd_iso(q, max_nodes);
    if (*design) return cmd_design(q, i, sampled);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

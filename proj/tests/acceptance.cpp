// Acceptance suite: one line per criterion, exit 0 iff every selected
// criterion passed.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddwl/designs.hpp"
#include "ddwl/suite.hpp"

namespace {

using ddwl::CheckResult;
using ddwl::CheckStatus;
using ddwl::Context;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void add(std::uint32_t q, bool ok, const std::string& extra = "") {
    pass = pass && ok;
    std::string s = "q=" + std::to_string(q) + " " + (ok ? "pass" : "fail");
    if (!extra.empty()) s += " (" + extra + ")";
    notes.push_back(std::move(s));
  }
  void note(const std::string& s) { notes.push_back(s); }
};

class Contexts {
 public:
  Context& at(std::uint32_t q) {
    auto& slot = ctx_[q];
    if (!slot) slot = std::make_unique<Context>(q);
    return *slot;
  }

 private:
  std::map<std::uint32_t, std::unique_ptr<Context>> ctx_;
};

bool passed(const CheckResult& r) { return r.status == CheckStatus::pass; }

std::string first_error(const CheckResult& r) {
  return r.data.contains("error") ? r.data["error"].get<std::string>() : "";
}

Outcome parameters(Contexts& cs) {
  Outcome o;
  std::string companion;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto start = std::chrono::steady_clock::now();
    const CheckResult r = ddwl::check_ddd_loopless(cs.at(q));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream extra;
    extra.precision(2);
    extra << std::fixed << secs << " s";
    o.add(q, passed(r) && (q != 7 || secs < 60.0), extra.str());
    const CheckResult looped = ddwl::check_ddd_looped(cs.at(q));
    companion += (companion.empty() ? "" : ", ") + std::to_string(q) + ":" + ddwl::to_string(looped.status);
  }
  o.note("looped companion " + companion);
  return o;
}

Outcome by_check(Contexts& cs, std::initializer_list<std::uint32_t> qs,
                 const std::function<CheckResult(Context&)>& run) {
  Outcome o;
  for (std::uint32_t q : qs) {
    const CheckResult r = run(cs.at(q));
    o.add(q, passed(r), first_error(r));
  }
  return o;
}

Outcome structure_constants(Contexts& cs) {
  Outcome o;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto mode = q == 3 ? ddwl::ConstantsMode::full_convolution : ddwl::ConstantsMode::full;
    const CheckResult r = ddwl::check_structure_constants(cs.at(q), mode);
    const auto n = r.data.contains("closed_form_mismatches") ? r.data["closed_form_mismatches"].size() : 0;
    o.add(q, passed(r), std::to_string(n) + " mismatches");
  }
  return o;
}

Outcome wl_closure(Contexts& cs) {
  Outcome o;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const CheckResult r = ddwl::check_wl_closure(cs.at(q));
    std::string ranks;
    for (const auto& g : r.data["generators"]) ranks += (ranks.empty() ? "" : ",") + std::to_string(g["rank"].get<int>());
    o.add(q, passed(r), "ranks " + ranks + " want " + std::to_string(q + 2));
  }
  return o;
}

Outcome iso_classes(Contexts& cs) {
  Outcome o;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const CheckResult r = ddwl::check_iso_classes(cs.at(q), {});
    const bool exact = r.data.value("exact", false);
    const auto classes = r.data.value("classes", 0u);
    o.add(q, exact && (q != 7 || classes >= 2), std::to_string(classes) + " classes");
  }
  return o;
}

Outcome automorphisms(Contexts& cs) {
  Outcome o;
  for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
    const std::uint32_t limit = q <= 5 ? 125 : 0;
    const CheckResult r = ddwl::check_automorphisms(cs.at(q), {}, limit);
    std::string extra = "K " + std::to_string(r.data.value("K_size", 0u));
    if (r.data.contains("orders") && !r.data["orders"].empty()) {
      extra += ", |Aut| " + std::to_string(r.data["orders"][0].value("order", std::uint64_t{0}));
    }
    o.add(q, passed(r), extra);
  }
  return o;
}

Outcome algebraic_automorphisms(Contexts& cs) {
  Outcome o;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const std::uint32_t limit = q <= 5 ? 125 : 0;
    const CheckResult r = ddwl::check_algebraic_automorphisms(cs.at(q), {}, limit);
    const auto count = r.data.value("count", std::uint64_t{0});
    const auto phi = r.data.value("phi", std::uint64_t{0});
    bool ok = r.data.contains("count") && count >= phi;
    std::string extra = std::to_string(count) + " >= " + std::to_string(phi);
    if (limit > 0) {
      const auto induced = r.data.value("induced", std::uint64_t{0});
      const auto bound = r.data.value("induced_bound", std::uint64_t{0});
      ok = ok && r.data.contains("induced") && r.data.value("induced_undetermined", std::uint64_t{1}) == 0 &&
           induced <= bound;
      extra += ", induced " + std::to_string(induced) + " <= " + std::to_string(bound);
    }
    o.add(q, ok, extra);
  }
  return o;
}

Outcome design_iso(Contexts& cs) {
  Outcome o;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto mode = q <= 5 ? ddwl::PairCheck::exhaustive : ddwl::PairCheck::sampled;
    const CheckResult r = ddwl::check_design_iso(cs.at(q), mode);
    o.add(q, passed(r), q <= 5 ? "exhaustive" : "sampled");
  }
  for (std::uint32_t q : {9u, 11u}) {
    const ddwl::Family& fam = cs.at(q).family();
    bool ok = true;
    for (std::uint32_t i = 0; i < q; ++i) {
      try {
        ok = ok && ddwl::desiso_maps(fam, fam.field().at(i)).det_a != fam.field().zero();
      } catch (const std::exception&) {
        ok = false;
      }
    }
    o.add(q, ok, "det(A) only");
  }
  return o;
}

Outcome engine_properties(Contexts& cs) {
  Outcome o;
  for (std::uint32_t q : {3u, 5u}) {
    const CheckResult r = ddwl::check_engine_properties(cs.at(q), 10);
    o.add(q, passed(r), "relabelings");
  }
  for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
    const CheckResult r = ddwl::check_field_group_axioms(cs.at(q));
    o.add(q, passed(r), "axioms");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(Contexts&)> run;
};

std::vector<Criterion> criteria() {
  return {
      {1, "ddd parameters", parameters},
      {2, "dds identity",
       [](Contexts& cs) { return by_check(cs, {3, 5, 7, 9}, [](Context& c) { return ddwl::check_transversal(c); }); }},
      {3, "psi group law",
       [](Contexts& cs) { return by_check(cs, {3, 5, 7, 9}, [](Context& c) { return ddwl::check_psi_group(c); }); }},
      {4, "structure constants", structure_constants},
      {5, "wl closure", wl_closure},
      {6, "wl equivalence",
       [](Contexts& cs) { return by_check(cs, {3, 5, 7}, [](Context& c) { return ddwl::check_wl_equivalence(c); }); }},
      {7, "non-isomorphism", iso_classes},
      {8, "automorphisms", automorphisms},
      {9, "algebraic automorphisms", algebraic_automorphisms},
      {10, "design isomorphism", design_iso},
      {11, "one-point extension",
       [](Contexts& cs) { return by_check(cs, {3, 5}, [](Context& c) { return ddwl::check_one_point_extension(c); }); }},
      {12, "engine properties", engine_properties},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  Contexts cs;
  bool all = true;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run(cs);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("error: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " " << c.name << ":";
    for (std::size_t k = 0; k < o.notes.size(); ++k) std::cout << (k == 0 ? " " : "; ") << o.notes[k];
    std::cout << '\n';
  }
  return all ? 0 : 1;
}

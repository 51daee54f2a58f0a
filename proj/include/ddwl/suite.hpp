#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddwl/coherent.hpp"
#include "ddwl/construction.hpp"
#include "ddwl/designs.hpp"
#include "ddwl/isotest.hpp"
#include "ddwl/srings.hpp"

namespace ddwl {

inline constexpr const char* kVersion = "0.1.0";

enum class CheckStatus { pass, fail, undetermined };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  nlohmann::json data;
  double seconds = 0.0;
};

enum class SuiteMode { full, fast };

struct SuiteOptions {
  SuiteMode mode = SuiteMode::full;
  SearchOptions search;
};

/// Objects for one q, built on first use and shared between checks.
class Context {
 public:
  explicit Context(std::uint32_t q, std::uint32_t max_vertices = kDefaultMaxVertices);

  std::uint32_t q() const { return family_.q(); }
  const Family& family() const { return family_; }
  const std::vector<Fe>& generators() const { return generators_; }
  const SRing& ring() const { return ring_; }

  const Digraph& gamma(Fe i);
  const Digraph& gamma_loopless(Fe i);
  const CoherentConfiguration& closure(Fe i);
  const StructureConstantTensor& constants(ConstantsMode mode);

 private:
  Family family_;
  std::uint32_t max_vertices_;
  std::vector<Fe> generators_;
  SRing ring_;
  std::map<std::uint32_t, Digraph> gamma_;
  std::map<std::uint32_t, Digraph> loopless_;
  std::map<std::uint32_t, std::unique_ptr<CoherentConfiguration>> closure_;
  std::map<ConstantsMode, StructureConstantTensor> constants_;
};

/// One check per entry; names are stable report keys.
CheckResult check_ddd_loopless(Context& ctx);
CheckResult check_ddd_looped(Context& ctx);
CheckResult check_transversal(Context& ctx);
CheckResult check_psi_group(Context& ctx);
CheckResult check_structure_constants(Context& ctx, ConstantsMode mode);
CheckResult check_wl_closure(Context& ctx);
/// Reads delta off the computed constants and rechecks the closed forms and
/// the WL closures with the psi-group it defines.
CheckResult check_psi_delta_fit(Context& ctx);
CheckResult check_wl_equivalence(Context& ctx);
CheckResult check_iso_classes(Context& ctx, const SearchOptions& opts);
/// K verified as automorphisms; |Aut(Gamma_i)| computed when q^3 <= order_limit.
CheckResult check_automorphisms(Context& ctx, const SearchOptions& opts, std::uint32_t order_limit = 125);
/// Induced count computed when q^3 <= induced_limit.
CheckResult check_algebraic_automorphisms(Context& ctx, const SearchOptions& opts, std::uint32_t induced_limit = 125);
CheckResult check_design_iso(Context& ctx, PairCheck mode);
CheckResult check_one_point_extension(Context& ctx);
CheckResult check_engine_properties(Context& ctx, std::uint32_t relabelings = 10);
CheckResult check_field_group_axioms(Context& ctx);

struct RunReport {
  std::uint32_t q = 0;
  FieldSpec field;
  SuiteMode mode = SuiteMode::full;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json(bool timings = true) const;
};

/// Every check for q in a fixed order. fast mode samples the pair loops and
/// skips the searches that need q^3 > 27.
RunReport run_suite(std::uint32_t q, const SuiteOptions& opts, std::uint32_t max_vertices = kDefaultMaxVertices);

nlohmann::json field_json(const FieldSpec& spec);

}  // namespace ddwl

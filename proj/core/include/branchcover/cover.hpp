#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchcover/finite_group.hpp"
#include "branchcover/knot.hpp"
#include "branchcover/linalg.hpp"
#include "branchcover/presentation.hpp"

namespace branchcover::cover {

enum class CoverType { Unknot, Cyclic, Tetrahedral, Icosahedral, InfiniteOrUnknown };

struct Classification {
  CoverType type = CoverType::InfiniteOrUnknown;
  /// Group order for Cyclic, 0 otherwise.
  std::int64_t n = 0;

  /// "Unknot", "CyclicType{3}", "TetrahedralType", "IcosahedralType", "InfiniteOrUnknown".
  std::string to_string() const;
  static Classification parse(std::string_view text);
  friend bool operator==(const Classification&, const Classification&) = default;
};

struct AnalysisOptions {
  std::size_t coset_cap = pres::kDefaultCosetCap;
  /// Wall-clock timings make reports nondeterministic, so they are opt-in.
  bool timings = false;
};

struct CoverReport {
  std::string name;
  std::int64_t determinant = 0;
  exact::AbelianGroup h1;
  /// Empty when the enumeration was inconclusive.
  std::optional<std::size_t> orbifold_order;
  std::optional<std::size_t> cover_order;
  std::optional<exact::AbelianGroup> cover_abelianization;
  /// Orders of the derived series of the cover group, ending with the first repeat.
  std::vector<std::size_t> derived_series;
  Classification classification;
  /// Cover order is never 2, and is 1 only when the determinant is 1.
  bool order_consistent = true;
  std::optional<double> ms;
  /// Non-fatal structural remarks, such as a solvable cover whose commutator subgroup is not of order 8.
  std::string advisory;

  friend bool operator==(const CoverReport&, const CoverReport&) = default;
};

/// Classifies the cover group given as a subgroup of a permutation group.
/// Throws InternalInconsistency for a non-cyclic abelian group, UnclassifiedFiniteGroup when the
/// group is neither solvable nor has a perfect derived-series limit of order 120.
Classification classify_finite(const groups::FiniteGroup& g, const groups::Subgroup& h);

/// Determinant, Wirtinger presentation, orbifold quotient, enumeration, kernel and classification.
/// Throws InternalInconsistency when the determinant is even or differs from the order of the cover
/// group's abelianization.
CoverReport analyze(const knot::KnotDiagram& diagram, std::string name, const AnalysisOptions& options = {});

/// Builds a diagram from one of the input formats: pd, dt, braid, torus ("p q"),
/// two-bridge ("p q") and montesinos ("e; b1/a1 b2/a2 ...").
knot::KnotDiagram diagram_from_input(std::string_view format, std::string_view text);

struct CorpusRow {
  std::string name;
  std::string format;
  std::string input;
  /// Ground truth; Unknot rows are the only ones allowed a trivial cover.
  std::optional<Classification> expect;
};

/// Tab-separated rows "name, format, input, expect"; blank lines and lines starting with '#' are skipped.
/// Throws ParseError with the line number as position.
std::vector<CorpusRow> parse_corpus(std::istream& in);
std::vector<CorpusRow> load_corpus(const std::string& path);

struct RowError {
  std::string name;
  std::string message;
};

struct CorpusResult {
  /// Sorted by name.
  std::vector<CoverReport> reports;
  std::vector<RowError> errors;
  bool any_order_violation = false;
  bool any_even_determinant = false;
  bool any_order_two = false;
  /// A trivial cover on a row not labelled Unknot, or the reverse.
  bool any_unknot_mismatch = false;
  std::vector<std::string> expectation_mismatches;

  std::size_t violations() const;
};

using RowAnalyzer = std::function<CoverReport(const CorpusRow&, const AnalysisOptions&)>;

CoverReport analyze_row(const CorpusRow& row, const AnalysisOptions& options);

/// Runs rows on up to `workers` threads. Row failures are collected, never rethrown.
CorpusResult run_corpus(const std::vector<CorpusRow>& rows, const AnalysisOptions& options, std::size_t workers = 1,
                        const RowAnalyzer& analyzer = analyze_row);

inline constexpr std::string_view kReportSchema = "branchcover.cover/1";

/// One JSON object per report with a fixed key order.
std::string to_json_line(const CoverReport& r);
CoverReport from_json_line(std::string_view line);
std::string to_csv(const std::vector<CoverReport>& reports);
std::string to_table(const std::vector<CoverReport>& reports);

}  // namespace branchcover::cover

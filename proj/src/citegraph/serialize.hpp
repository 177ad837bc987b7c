#pragma once

// JSON and CSV renderings of every result type. Output bytes depend only on
// the values, so identical results always serialize identically.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "citegraph/clustering.hpp"
#include "citegraph/corpus.hpp"
#include "citegraph/distance.hpp"
#include "citegraph/fields.hpp"
#include "citegraph/graph.hpp"
#include "citegraph/impact.hpp"
#include "citegraph/null_model.hpp"
#include "citegraph/stats.hpp"

namespace citegraph {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal; NaN and infinities render as "".
std::string format_number(double value);

Json to_json(const LoadReport& report);
Json to_json(const CorpusSummary& summary);
Json to_json(const BuildReport& report);
Json to_json(const BoxStats& stats);
Json to_json(const DistanceSummary& summary);
Json to_json(const GaussianFit& fit);
Json to_json(const NullEnsembleResult& result);
Json to_json(const ClusteringDistribution& dist);
Json to_json(const RobustnessCurve& curve);
Json to_json(const WithinShareSummary& summary);
Json to_json(const PctChangeResult& result);

std::string histogram_csv(const DistanceSummary& summary);
std::string clustering_edges_csv(const CitationGraph& graph, const ClusteringDistribution& dist);
std::string robustness_csv(const RobustnessCurve& curve);
std::string lorenz_csv(const LorenzResult& lorenz);
std::string matrix_csv(const FieldMatrix& matrix);
std::string hh_csv(const std::vector<HhRow>& rows);
std::string within_share_csv(const WithinShareSummary& summary);
std::string pct_change_csv(const PctChangeResult& result);
std::string null_networks_csv(const NullEnsembleResult& result);

// Reads a labeled matrix written by matrix_csv. Counts are not stored in the
// CSV and come back empty.
FieldMatrix parse_matrix_csv(std::string_view text, CellKind kind);

}  // namespace citegraph

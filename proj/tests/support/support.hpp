#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "skg/classify/train.hpp"
#include "skg/common/rng.hpp"
#include "skg/extract/ranker.hpp"
#include "skg/kgstore/graph.hpp"
#include "skg/kgstore/traverse.hpp"
#include "skg/relate/relation_model.hpp"

namespace skg::testing {

std::filesystem::path fixtures_dir();
std::filesystem::path source_dir();
/// Path of the built `skg` tool.
std::filesystem::path skg_binary();

/// An empty scratch directory unique to this process.
std::filesystem::path fresh_dir(const std::string& name);

/// ||a - b|| / max(||a||, ||b||, floor); the floor keeps an all-zero pair
/// from dividing by zero.
double relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double floor = 1e-8);

/// Central differences of f at x.
Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x, double h = 1e-6);

/// Flattens matrices column-major into one vector and back.
Eigen::VectorXd flatten(const std::vector<const Eigen::MatrixXd*>& parts);
void unflatten(const Eigen::VectorXd& v, const std::vector<Eigen::MatrixXd*>& parts);

// ---- synthetic data ----

/// Documents from two disjoint vocabularies, labelled by the vocabulary
/// they were drawn from; a handful of shared filler words adds noise.
std::vector<classify::LabeledDocument> two_discipline_corpus(std::size_t n, std::uint64_t seed);

/// Groups where the positive always has the largest tfidf_score; the other
/// features are noise.
std::vector<extract::RankGroup> separable_rank_groups(std::size_t n, std::uint64_t seed);

/// Sentences whose label is fixed by one marker token between head and tail.
std::vector<relate::RelationAnnotation> marker_annotations(std::size_t n, std::uint64_t seed);

/// Random schema-valid graph with at most max_nodes nodes.
kg::KnowledgeGraph random_graph(Rng& rng, std::size_t max_nodes);

/// The path query evaluated as nested joins over the raw edge map, without
/// the adjacency index.
std::vector<kg::BindingRow> brute_force_traverse(const kg::KnowledgeGraph& g,
                                                 const kg::PathQuery& q);

/// Random 1-3 step queries whose steps chain through valid signatures, with
/// random start and end selectors.
kg::PathQuery random_query(const kg::KnowledgeGraph& g, Rng& rng, std::size_t hops);

/// Geohash by the textbook string bisection, written separately from
/// skg::geo.
std::string reference_geohash(double lat, double lon, std::size_t precision);

/// Power law with alpha 2 cut off by exp(-k / kappa), by rejection.
std::vector<std::uint64_t> cutoff_power_law_sample(std::size_t n, double kappa, std::uint64_t seed);
std::vector<std::uint64_t> power_law_sample(std::size_t n, double alpha, std::uint64_t seed);

/// Runs the skg tool with the given arguments; returns the exit status and
/// fills `output` with stdout and stderr.
int run_skg(const std::vector<std::string>& args, std::string* output = nullptr);

std::string read_text(const std::filesystem::path& path);

}  // namespace skg::testing

#ifndef PROOFNET_JSON_IO_HPP
#define PROOFNET_JSON_IO_HPP

#include <string>
#include <vector>

#include "proofnet/depgraph.hpp"
#include "proofnet/linking.hpp"
#include "proofnet/verification.hpp"

namespace proofnet {

/// Frame file: `{"goal": "<type>", "premises": [{"word": ..., "type": ...}]}`.
std::string frame_to_json(const ProofFrame& frame, bool pretty = true);
ProofFrame frame_from_json(const std::string& text, const Vocabulary& vocab);

/// Structure file: `{"frame": <frame>, "links": [[neg, pos], ...]}`.
std::string structure_to_json(const ProofStructure& s, bool pretty = true);
ProofStructure structure_from_json(const std::string& text, const Vocabulary& vocab);

/// Links only (for line-oriented enumeration output).
std::string links_to_json(const ProofStructure& s);

/// Score file: map from atom token to the two index chains plus a row-major
/// score array: `{"np": {"negatives": [...], "positives": [...],
/// "scores": [...]}}`. Loading validates the chains against the frame.
std::string scores_to_json(const std::vector<ScoreMatrix>& scores, const ProofFrame& frame,
                           bool pretty = true);
std::vector<ScoreMatrix> scores_from_json(const std::string& text, const ProofFrame& frame);

std::string term_to_json(const LambdaTerm& t, bool pretty = true);
std::string depgraph_to_json(const DependencyGraph& g, bool pretty = true);
std::string verdict_to_json(const NetVerdict& v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace proofnet

#endif  // PROOFNET_JSON_IO_HPP

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "fgsw/graph.hpp"
#include "fgsw/rng.hpp"

namespace fgsw {

// Parameters of the randomized highway augmentation.
struct OverlayParams {
  double k = 1.0;  // highway constant: each node is a highway node w.p. 1/k
  double q = 1.0;  // contact multiplier: round(q*k) draws per highway node
  double s = 2.0;  // clustering exponent: Pr(u -> v) proportional to d(u,v)^-s
  std::uint64_t seed = 0;

  std::size_t contacts_per_node() const;
  void validate() const;

  bool operator==(const OverlayParams&) const = default;
};

inline constexpr std::uint32_t kMaxMembershipEpochs = 16;

struct Membership {
  std::vector<std::uint8_t> is_highway;
  std::uint32_t epoch = 0;
  std::size_t highway_count = 0;
};

// Independent 1/k coin per node from the (seed, node, epoch) substream. If
// fewer than two nodes come up, the whole draw is repeated with the next
// epoch, up to kMaxMembershipEpochs attempts; the last attempt is returned.
Membership sample_highway_membership(const Graph& graph, const OverlayParams& params);

// Exact contact distribution d(u,h)^-s / z(u) over highway nodes h != u.
//
// On a graph without symmetry information each node needs a full BFS. On a
// torus the distance table of node 0 serves every node by translation; when
// the highway set is large, draws then switch to rejection sampling from the
// all-node distribution, which keeps k = 1 affordable on big lattices.
class ContactModel {
 public:
  ContactModel(const Graph& graph, std::span<const std::uint8_t> is_highway, double s);

  enum class Mode { bfs, translation, rejection };

  const Graph& graph() const noexcept { return *graph_; }
  double exponent() const noexcept { return s_; }
  Mode mode() const noexcept { return mode_; }
  bool is_highway(NodeId v) const noexcept { return is_highway_[v] != 0; }
  std::span<const NodeId> highway_nodes() const noexcept { return highway_; }
  double weight(Distance d) const noexcept { return weight_[d]; }

 private:
  friend class ContactSampler;

  const Graph* graph_;
  std::vector<std::uint8_t> is_highway_;
  std::vector<NodeId> highway_;
  double s_;
  Mode mode_ = Mode::bfs;
  std::vector<double> weight_;  // weight_[d] = d^-s, weight_[0] = 0

  // torus modes
  std::vector<Distance> offset_dist_;   // distance of each offset from the origin
  std::vector<double> offset_prefix_;   // running weight over offsets, ascending id
  // per-axis coordinates, structure of arrays; "other" = non-highway nodes,
  // filled only when rejection mode sums over the complement
  std::vector<std::uint32_t> highway_coords_[3];
  std::vector<std::uint32_t> other_coords_[3];
  std::vector<Distance> axis_dist_;  // [side + a - b] = circular |a - b|

  double torus_sum(const std::vector<std::uint32_t> (&coords)[3], NodeId u, double* prefix) const;
};

// One highway node's contact distribution. Draw i of node u is a pure function
// of (seed, u, i), so draws can be regenerated after the fact.
class ContactSampler {
 public:
  struct Scratch {
    BfsScratch bfs;
    DistanceField field;
    std::vector<double> prefix;
  };

  ContactSampler(const ContactModel& model, NodeId u, Scratch& scratch);

  double z() const noexcept { return z_; }
  NodeId draw(const CounterRng& rng, std::uint64_t index) const;

 private:
  void build_prefix(std::vector<double>& prefix) const;
  NodeId invert(const std::vector<double>& prefix, double x) const;

  const ContactModel* model_;
  NodeId u_;
  Scratch* scratch_;
  double z_ = 0;
};

// Randomized highway graph over an underlying Graph: membership flags, directed
// long-range contacts of every highway node (ascending, deduplicated) and the
// exact normalization constant z(u) of each.
class HighwayOverlay {
 public:
  HighwayOverlay() = default;

  // Validating constructor used by deserialization and tests. `contacts[i]`
  // and `z[i]` belong to the i-th highway node in ascending id order.
  static HighwayOverlay assemble(const OverlayParams& params, std::uint32_t epoch,
                                 std::vector<std::uint8_t> is_highway,
                                 std::vector<std::vector<NodeId>> contacts,
                                 std::vector<double> z);

  const OverlayParams& params() const noexcept { return params_; }
  std::uint32_t epoch() const noexcept { return epoch_; }
  std::size_t node_count() const noexcept { return is_highway_.size(); }
  std::size_t draws_per_node() const { return params_.contacts_per_node(); }

  bool is_highway(NodeId v) const noexcept { return is_highway_[v] != 0; }
  std::span<const std::uint8_t> membership() const noexcept { return is_highway_; }
  std::span<const NodeId> highway_nodes() const noexcept { return highway_; }
  std::size_t highway_count() const noexcept { return highway_.size(); }

  // Empty for non-highway nodes.
  std::span<const NodeId> contacts(NodeId u) const noexcept;
  bool has_contact(NodeId u, NodeId v) const noexcept;

  // Cached z(u); throws std::invalid_argument if u is not a highway node.
  double z(NodeId u) const;

  bool operator==(const HighwayOverlay&) const = default;

 private:
  static constexpr std::uint32_t kNoSlot = 0xffffffffu;

  OverlayParams params_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint8_t> is_highway_;
  std::vector<NodeId> highway_;
  std::vector<std::uint32_t> slot_;  // node -> index into highway_
  std::vector<std::size_t> contact_offsets_;
  std::vector<NodeId> contact_targets_;
  std::vector<double> z_;
};

HighwayOverlay build_overlay(const Graph& graph, const OverlayParams& params,
                             unsigned threads = 1);
// Contacts for a fixed membership (e.g. reused across clustering exponents).
HighwayOverlay build_overlay(const Graph& graph, const OverlayParams& params,
                             const Membership& membership, unsigned threads = 1);

double zvalue(const HighwayOverlay& overlay, NodeId u);

// Per-node distance to the nearest highway node and the lowest-id neighbor one
// step closer to it. Highway nodes map to (0, self).
struct HighwayField {
  std::vector<Distance> distance;
  std::vector<NodeId> next_hop;

  Distance max_distance() const;
};

HighwayField nearest_highway_field(const Graph& graph, const HighwayOverlay& overlay);

// Header "k q s seed epoch n", then "h <id> z=<float> : t1 t2 ..." per highway
// node in ascending id. Floats use 17 significant digits.
void write_overlay(std::ostream& out, const HighwayOverlay& overlay);
void write_overlay(const std::filesystem::path& path, const HighwayOverlay& overlay);
HighwayOverlay read_overlay(std::istream& in, const Graph& graph);
HighwayOverlay read_overlay(const std::filesystem::path& path, const Graph& graph);

}  // namespace fgsw

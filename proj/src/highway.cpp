#include "fgsw/highway.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fgsw/parallel.hpp"

namespace fgsw {

namespace {

// Torus translation sums cost O(|H|) per highway node; above this many
// node pairs draws switch to rejection sampling.
constexpr double kTranslationPairBudget = 1073741824.0;

// Rejection attempts per draw before falling back to exact inversion.
constexpr std::uint64_t kMaxRejections = std::uint64_t{1} << 20;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

std::size_t OverlayParams::contacts_per_node() const {
  return static_cast<std::size_t>(std::llround(q * k));
}

void OverlayParams::validate() const {
  if (!(k >= 1.0) || !std::isfinite(k)) throw std::invalid_argument("overlay: k must be >= 1");
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("overlay: q must be > 0");
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("overlay: s must be >= 0");
  if (contacts_per_node() < 1) throw std::invalid_argument("overlay: round(q*k) must be >= 1");
}

Membership sample_highway_membership(const Graph& graph, const OverlayParams& params) {
  params.validate();
  const CounterRng rng(params.seed, Stream::membership);
  const double p = 1.0 / params.k;
  const std::size_t n = graph.node_count();

  Membership result;
  result.is_highway.assign(n, 0);
  for (std::uint32_t epoch = 0; epoch < kMaxMembershipEpochs; ++epoch) {
    result.epoch = epoch;
    result.highway_count = 0;
    for (NodeId v = 0; v < n; ++v) {
      const bool chosen = rng.uniform(v, epoch) < p;
      result.is_highway[v] = chosen ? 1 : 0;
      result.highway_count += chosen ? 1 : 0;
    }
    if (result.highway_count >= 2) break;
  }
  return result;
}

ContactModel::ContactModel(const Graph& graph, std::span<const std::uint8_t> is_highway, double s)
    : graph_(&graph), is_highway_(is_highway.begin(), is_highway.end()), s_(s) {
  if (is_highway_.size() != graph.node_count()) {
    throw std::invalid_argument("ContactModel: membership size does not match graph");
  }
  for (NodeId v = 0; v < is_highway_.size(); ++v) {
    if (is_highway_[v]) highway_.push_back(v);
  }

  BfsScratch scratch;
  DistanceField origin;
  const Distance ecc = eccentricity(graph, 0, scratch, origin);
  Distance max_distance = 2 * ecc;

  if (graph.torus()) {
    max_distance = ecc;
    offset_dist_ = std::move(origin.dist);
    const auto h = static_cast<double>(highway_.size());
    mode_ = h * h <= kTranslationPairBudget ? Mode::translation : Mode::rejection;

    const TorusShape& t = *graph.torus();
    axis_dist_.resize(2 * static_cast<std::size_t>(t.side));
    for (std::size_t i = 0; i < axis_dist_.size(); ++i) {
      const auto delta = static_cast<Distance>(i >= t.side ? i - t.side : t.side - i);
      axis_dist_[i] = std::min<Distance>(delta, t.side - delta);
    }
    const bool complement = mode_ == Mode::rejection && 2 * highway_.size() > is_highway_.size();
    for (NodeId v = 0; v < is_highway_.size(); ++v) {
      if (!is_highway_[v] && !complement) continue;
      auto& dest = is_highway_[v] ? highway_coords_ : other_coords_;
      NodeId rest = v;
      for (int a = 0; a < t.dim; ++a) {
        dest[a].push_back(rest % t.side);
        rest /= t.side;
      }
    }
  }

  weight_.resize(static_cast<std::size_t>(max_distance) + 1);
  weight_[0] = 0.0;
  for (Distance d = 1; d <= max_distance; ++d) weight_[d] = std::pow(static_cast<double>(d), -s_);

  if (mode_ == Mode::rejection) {
    offset_prefix_.resize(offset_dist_.size());
    double total = 0.0;
    for (std::size_t x = 0; x < offset_dist_.size(); ++x) {
      total += weight_[offset_dist_[x]];
      offset_prefix_[x] = total;
    }
  }
}

ContactSampler::ContactSampler(const ContactModel& model, NodeId u, Scratch& scratch)
    : model_(&model), u_(u), scratch_(&scratch) {
  if (!model.graph().contains(u) || !model.is_highway(u)) {
    throw std::invalid_argument("ContactSampler: node " + std::to_string(u) + " is not a highway node");
  }

  if (model.mode_ != ContactModel::Mode::rejection) {
    build_prefix(scratch.prefix);
    z_ = scratch.prefix.empty() ? 0.0 : scratch.prefix.back();
    return;
  }

  // Rejection mode: z from whichever side of the membership is smaller.
  const std::size_t n = model.graph().node_count();
  if (model.highway_.size() * 2 <= n) {
    z_ = model.torus_sum(model.highway_coords_, u, nullptr);
  } else {
    z_ = model.offset_prefix_.back() - model.torus_sum(model.other_coords_, u, nullptr);
  }
}

double ContactModel::torus_sum(const std::vector<std::uint32_t> (&coords)[3], NodeId u,
                               double* prefix) const {
  const TorusShape& t = *graph_->torus();
  std::uint32_t cu[3] = {0, 0, 0};
  for (int a = 0; a < t.dim; ++a) {
    cu[a] = u % t.side;
    u /= t.side;
  }
  const std::size_t count = coords[0].size();
  const Distance* axis = axis_dist_.data() + t.side;
  const double* w = weight_.data();
  double total = 0.0;
  auto run = [&](auto dist) {
    for (std::size_t i = 0; i < count; ++i) {
      total += w[dist(i)];
      if (prefix) prefix[i] = total;
    }
  };
  const std::uint32_t* x = coords[0].data();
  const std::uint32_t* y = coords[1].data();
  const std::uint32_t* z = coords[2].data();
  const auto ax = static_cast<std::ptrdiff_t>(cu[0]);
  const auto ay = static_cast<std::ptrdiff_t>(cu[1]);
  const auto az = static_cast<std::ptrdiff_t>(cu[2]);
  switch (t.dim) {
    case 1: run([&](std::size_t i) { return axis[x[i] - ax]; }); break;
    case 2: run([&](std::size_t i) { return axis[x[i] - ax] + axis[y[i] - ay]; }); break;
    default: run([&](std::size_t i) { return axis[x[i] - ax] + axis[y[i] - ay] + axis[z[i] - az]; });
  }
  return total;
}

void ContactSampler::build_prefix(std::vector<double>& prefix) const {
  const ContactModel& model = *model_;
  const auto& w = model.weight_;
  prefix.resize(model.highway_.size());
  double total = 0.0;

  if (model.mode_ == ContactModel::Mode::bfs) {
    bfs(model.graph(), u_, std::nullopt, scratch_->field, scratch_->bfs);
    const auto& dist = scratch_->field.dist;
    for (std::size_t i = 0; i < model.highway_.size(); ++i) {
      total += w[dist[model.highway_[i]]];
      prefix[i] = total;
    }
  } else {
    model.torus_sum(model.highway_coords_, u_, prefix.data());
  }
}

NodeId ContactSampler::invert(const std::vector<double>& prefix, double x) const {
  auto it = std::upper_bound(prefix.begin(), prefix.end(), x);
  if (it == prefix.end()) {
    // x rounded up to the total: take the last target with positive weight
    it = std::prev(prefix.end());
    while (it != prefix.begin() && *it == *std::prev(it)) --it;
  }
  return model_->highway_[static_cast<std::size_t>(it - prefix.begin())];
}

NodeId ContactSampler::draw(const CounterRng& rng, std::uint64_t index) const {
  const ContactModel& model = *model_;
  if (model.mode_ != ContactModel::Mode::rejection) {
    return invert(scratch_->prefix, rng.uniform(u_, index) * z_);
  }

  const TorusShape& torus = *model.graph().torus();
  const auto& offsets = model.offset_prefix_;
  const double total = offsets.back();
  for (std::uint64_t attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double x = rng.uniform(u_, index, attempt) * total;
    auto it = std::upper_bound(offsets.begin(), offsets.end(), x);
    if (it == offsets.end()) continue;
    const NodeId v = torus.translate(u_, static_cast<NodeId>(it - offsets.begin()));
    if (model.is_highway_[v]) return v;
  }
  build_prefix(scratch_->prefix);
  return invert(scratch_->prefix, rng.uniform(u_, index, kMaxRejections) * scratch_->prefix.back());
}

HighwayOverlay HighwayOverlay::assemble(const OverlayParams& params, std::uint32_t epoch,
                                        std::vector<std::uint8_t> is_highway,
                                        std::vector<std::vector<NodeId>> contacts,
                                        std::vector<double> z) {
  params.validate();
  HighwayOverlay overlay;
  overlay.params_ = params;
  overlay.epoch_ = epoch;
  overlay.is_highway_ = std::move(is_highway);
  overlay.slot_.assign(overlay.is_highway_.size(), kNoSlot);
  for (NodeId v = 0; v < overlay.is_highway_.size(); ++v) {
    if (overlay.is_highway_[v]) {
      overlay.slot_[v] = static_cast<std::uint32_t>(overlay.highway_.size());
      overlay.highway_.push_back(v);
    }
  }
  const std::size_t h = overlay.highway_.size();
  if (contacts.size() != h || z.size() != h) {
    throw DataError("overlay: contact/z lists do not match the highway node count");
  }

  const std::size_t limit = params.contacts_per_node();
  overlay.contact_offsets_.assign(h + 1, 0);
  for (std::size_t i = 0; i < h; ++i) {
    auto& list = contacts[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (list.size() > limit) {
      throw DataError("overlay: node " + std::to_string(overlay.highway_[i]) + " has more than " +
                      std::to_string(limit) + " contacts");
    }
    for (NodeId t : list) {
      if (t >= overlay.is_highway_.size() || !overlay.is_highway_[t]) {
        throw DataError("overlay: contact " + std::to_string(t) + " of node " +
                        std::to_string(overlay.highway_[i]) + " is not a highway node");
      }
      if (t == overlay.highway_[i]) {
        throw DataError("overlay: self-contact on node " + std::to_string(t));
      }
    }
    overlay.contact_offsets_[i + 1] = overlay.contact_offsets_[i] + list.size();
  }
  overlay.contact_targets_.reserve(overlay.contact_offsets_.back());
  for (const auto& list : contacts) {
    overlay.contact_targets_.insert(overlay.contact_targets_.end(), list.begin(), list.end());
  }
  overlay.z_ = std::move(z);
  return overlay;
}

std::span<const NodeId> HighwayOverlay::contacts(NodeId u) const noexcept {
  if (u >= slot_.size() || slot_[u] == kNoSlot) return {};
  const std::uint32_t i = slot_[u];
  return {contact_targets_.data() + contact_offsets_[i], contact_targets_.data() + contact_offsets_[i + 1]};
}

bool HighwayOverlay::has_contact(NodeId u, NodeId v) const noexcept {
  auto list = contacts(u);
  return std::binary_search(list.begin(), list.end(), v);
}

double HighwayOverlay::z(NodeId u) const {
  if (u >= slot_.size() || slot_[u] == kNoSlot) {
    throw std::invalid_argument("z: node " + std::to_string(u) + " is not a highway node");
  }
  return z_[slot_[u]];
}

double zvalue(const HighwayOverlay& overlay, NodeId u) { return overlay.z(u); }

HighwayOverlay build_overlay(const Graph& graph, const OverlayParams& params, unsigned threads) {
  return build_overlay(graph, params, sample_highway_membership(graph, params), threads);
}

HighwayOverlay build_overlay(const Graph& graph, const OverlayParams& params,
                             const Membership& membership, unsigned threads) {
  params.validate();
  if (membership.is_highway.size() != graph.node_count()) {
    throw std::invalid_argument("build_overlay: membership size does not match graph");
  }
  if (membership.highway_count < 2) {
    throw DataError("build_overlay: fewer than 2 highway nodes after " +
                    std::to_string(membership.epoch + 1) + " membership epochs");
  }

  const ContactModel model(graph, membership.is_highway, params.s);
  const auto highway = model.highway_nodes();
  const std::size_t draws = params.contacts_per_node();
  const CounterRng rng(params.seed, Stream::contacts);

  std::vector<std::vector<NodeId>> contacts(highway.size());
  std::vector<double> z(highway.size());
  std::vector<ContactSampler::Scratch> scratch(worker_count(highway.size(), threads));

  parallel_for(highway.size(), threads, [&](std::size_t i, unsigned worker) {
    const ContactSampler sampler(model, highway[i], scratch[worker]);
    z[i] = sampler.z();
    auto& list = contacts[i];
    list.reserve(draws);
    for (std::size_t j = 0; j < draws; ++j) list.push_back(sampler.draw(rng, j));
  });

  return HighwayOverlay::assemble(params, membership.epoch, membership.is_highway,
                                  std::move(contacts), std::move(z));
}

Distance HighwayField::max_distance() const {
  return distance.empty() ? 0 : *std::max_element(distance.begin(), distance.end());
}

HighwayField nearest_highway_field(const Graph& graph, const HighwayOverlay& overlay) {
  if (overlay.node_count() != graph.node_count()) {
    throw std::invalid_argument("nearest_highway_field: overlay does not match graph");
  }
  if (overlay.highway_count() == 0) {
    throw std::invalid_argument("nearest_highway_field: no highway nodes");
  }
  HighwayField field;
  field.distance = multi_source_bfs(graph, overlay.highway_nodes());
  field.next_hop.resize(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (field.distance[v] == 0) {
      field.next_hop[v] = v;
      continue;
    }
    // neighbor lists are ascending, so the first closer neighbor has the lowest id
    for (NodeId w : graph.neighbors(v)) {
      if (field.distance[w] < field.distance[v]) {
        field.next_hop[v] = w;
        break;
      }
    }
  }
  return field;
}

void write_overlay(std::ostream& out, const HighwayOverlay& overlay) {
  const auto& p = overlay.params();
  out << format_double(p.k) << ' ' << format_double(p.q) << ' ' << format_double(p.s) << ' '
      << p.seed << ' ' << overlay.epoch() << ' ' << overlay.node_count() << '\n';
  for (NodeId h : overlay.highway_nodes()) {
    out << "h " << h << " z=" << format_double(overlay.z(h)) << " :";
    for (NodeId t : overlay.contacts(h)) out << ' ' << t;
    out << '\n';
  }
}

void write_overlay(const std::filesystem::path& path, const HighwayOverlay& overlay) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write overlay file " + path.string());
  write_overlay(out, overlay);
}

HighwayOverlay read_overlay(std::istream& in, const Graph& graph) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> DataError {
    return DataError("overlay line " + std::to_string(line_no) + ": " + what);
  };

  if (!std::getline(in, line)) throw DataError("overlay file is empty");
  ++line_no;
  OverlayParams params;
  std::uint32_t epoch = 0;
  std::size_t n = 0;
  {
    std::istringstream header(line);
    if (!(header >> params.k >> params.q >> params.s >> params.seed >> epoch >> n)) {
      throw fail("expected header 'k q s seed epoch n'");
    }
  }
  if (n != graph.node_count()) {
    throw fail("overlay has " + std::to_string(n) + " nodes, graph has " +
               std::to_string(graph.node_count()));
  }

  std::vector<std::uint8_t> is_highway(n, 0);
  std::vector<std::vector<NodeId>> contacts;
  std::vector<double> z;
  long long previous = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string tag;
    std::string zfield;
    std::string colon;
    long long id = -1;
    if (!(row >> tag >> id >> zfield >> colon) || tag != "h" || colon != ":" ||
        zfield.rfind("z=", 0) != 0) {
      throw fail("expected 'h <id> z=<float> : targets'");
    }
    if (id < 0 || static_cast<std::size_t>(id) >= n) throw fail("node id out of range");
    if (id <= previous) throw fail("highway nodes must be listed in ascending id order");
    previous = id;
    is_highway[static_cast<std::size_t>(id)] = 1;
    try {
      z.push_back(std::stod(zfield.substr(2)));
    } catch (const std::exception&) {
      throw fail("bad z value '" + zfield + "'");
    }
    auto& list = contacts.emplace_back();
    long long t = 0;
    while (row >> t) {
      if (t < 0 || static_cast<std::size_t>(t) >= n) throw fail("contact id out of range");
      list.push_back(static_cast<NodeId>(t));
    }
    if (!row.eof()) throw fail("bad contact list");
  }
  return HighwayOverlay::assemble(params, epoch, std::move(is_highway), std::move(contacts), std::move(z));
}

HighwayOverlay read_overlay(const std::filesystem::path& path, const Graph& graph) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open overlay file " + path.string());
  return read_overlay(in, graph);
}

}  // namespace fgsw

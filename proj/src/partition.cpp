#include "topocouple/partition.hpp"

#include <algorithm>
#include <string>

namespace topocouple {

bool PartitionOfUnity::in_inner(const Element& h) const {
  const auto pos = w_h_->find(h);
  return pos && *pos < inner_count_;
}

const PartitionOfUnity::Row& PartitionOfUnity::row(const Element& h) const {
  const auto pos = w_h_->find(h);
  if (!pos || *pos >= inner_count_) {
    throw Error("psi", "h = " + w_h_->model().format(h) + " is outside the inner window of radius " +
                           std::to_string(inner_radius_) + "; enlarge radius_H or shrink the evaluation window");
  }
  return rows_[*pos];
}

Rational PartitionOfUnity::theta(std::size_t y, const Element& h) const {
  const Rational v = s_ + Rational(1) - Rational(w_h_->distance(h, net_.points.at(y)));
  return v.sign() > 0 ? v : Rational(0);
}

Rational PartitionOfUnity::Theta(const Element& h) const {
  Rational total(0);
  for (std::size_t y = 0; y < net_.points.size(); ++y) total += theta(y, h);
  return total;
}

std::vector<std::pair<Element, Rational>> PartitionOfUnity::alpha(const Element& h) const {
  const auto& r = row(h);
  std::vector<std::pair<Element, Rational>> out;
  for (const auto& [y, th] : r.theta) out.emplace_back(images_[y], th / r.Theta);
  return out;
}

std::shared_ptr<const PartitionOfUnity> build_partition(std::shared_ptr<const Window> w_h, std::shared_ptr<const Window> w_g,
                                                        const CoarseMap& phi, const Moduli& m, const Rational& s,
                                                        const PackingOptions& packing) {
  if (m.kappa_at(s) < 3) throw Error("partition", "kappa(" + s.str() + ") < 3; choose a larger scale");
  const Rational s1 = s + Rational(1);
  const std::int64_t inner = (Rational(w_h->radius()) - s1).floor();
  if (inner < 0) throw Error("partition", "radius_H " + std::to_string(w_h->radius()) + " is smaller than s + 1 = " + s1.str());

  auto p = std::shared_ptr<PartitionOfUnity>(new PartitionOfUnity());
  p->w_h_ = w_h;
  p->w_g_ = w_g;
  p->phi_ = phi;
  p->s_ = s;
  p->inner_radius_ = inner;
  p->inner_count_ = w_h->ball_size(inner);
  p->omega_s1_ = m.omega_at(s1);
  p->net_ = greedy_net(*w_h, s);
  for (const auto& y : p->net_.points) p->images_.push_back(phi.apply(y));
  try {
    p->packing_ = packing_number(*w_g, Rational(3), Rational(2 * p->omega_s1_), packing);
  } catch (const Error& e) {
    throw Error("partition", std::string("packing number for M: ") + e.what());
  }

  const auto& H = w_h->model();
  // theta_y(h) > 0 iff d(h, y) < s + 1, i.e. y = h w with |w| <= ceil(s + 1) - 1.
  const auto reach = w_h->ball(s1.ceil() - 1);
  const auto closed_reach = w_h->ball(s1.floor());
  const auto inner_elems = w_h->elements().first(p->inner_count_);
  p->rows_.reserve(p->inner_count_);
  for (const auto& h : inner_elems) {
    PartitionOfUnity::Row row;
    row.Theta = Rational(0);
    for (const auto& w : reach) {
      const auto it = p->net_.index.find(H.multiply(h, w));
      if (it == p->net_.index.end()) continue;
      const Rational th = s1 - Rational(w_h->length(w));
      row.theta.emplace_back(it->second, th);
      row.Theta += th;
    }
    std::sort(row.theta.begin(), row.theta.end());
    std::int64_t overlap = 0;
    for (const auto& w : closed_reach) overlap += p->net_.contains(H.multiply(h, w)) ? 1 : 0;
    p->max_overlap_ = std::max(p->max_overlap_, overlap);
    p->rows_.push_back(std::move(row));
  }
  p->n_apriori_ = Rational(1) + Rational(p->max_overlap_) * s1;

  // Empirical Lipschitz constant over adjacent inner pairs (d_H = 1).
  Rational n_emp(0);
  const auto gens = H.generators();
  for (std::size_t i = 0; i < inner_elems.size(); ++i) {
    const auto& a = p->rows_[i];
    for (const auto& gen : gens) {
      const auto pos = w_h->find(H.multiply(inner_elems[i], gen));
      if (!pos || *pos >= p->inner_count_) continue;
      const auto& b = p->rows_[*pos];
      std::size_t ia = 0;
      std::size_t ib = 0;
      while (ia < a.theta.size() || ib < b.theta.size()) {
        Rational diff;
        if (ib == b.theta.size() || (ia < a.theta.size() && a.theta[ia].first < b.theta[ib].first)) {
          diff = a.theta[ia++].second / a.Theta;
        } else if (ia == a.theta.size() || b.theta[ib].first < a.theta[ia].first) {
          diff = b.theta[ib++].second / b.Theta;
        } else {
          diff = abs(a.theta[ia].second / a.Theta - b.theta[ib].second / b.Theta);
          ++ia;
          ++ib;
        }
        if (diff > n_emp) n_emp = diff;
      }
    }
  }
  p->n_empirical_ = n_emp;
  return p;
}

SparseDensity psi(const PartitionOfUnity& p, const Element& h) {
  const auto& r = p.row(h);
  if (static_cast<std::int64_t>(r.theta.size()) > p.M()) {
    throw Error("psi", "|Z_h| = " + std::to_string(r.theta.size()) + " exceeds M = " + std::to_string(p.M()));
  }
  std::vector<Block> blocks;
  blocks.reserve(r.theta.size());
  for (const auto& [y, th] : r.theta) blocks.push_back(Block{p.images()[y], th / r.Theta});
  auto out = block_density(*p.window_g(), std::move(blocks));
  if (out.atoms.size() != out.blocks.size() * p.window_g()->ball_size(1)) {
    throw Error("psi", "blocks zB overlap at h = " + p.window_h()->model().format(h) + " (kappa(s) < 3?)");
  }
  return out;
}

}  // namespace topocouple

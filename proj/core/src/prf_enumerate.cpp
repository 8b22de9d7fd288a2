#include <algorithm>

#include "ecn/prf.hpp"

namespace ecn::prf {

namespace {

// Ordered partitions of total into exactly parts entries >= 1.
void partitions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (parts == 1) {
    if (total >= 1) {
      cur.push_back(total);
      emit(cur);
      cur.pop_back();
    }
    return;
  }
  for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
    cur.push_back(first);
    partitions(total - first, parts - 1, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<ExprPtr>& Enumerator::trees_of_size(std::size_t s) {
  while (trees_.size() < s) {
    std::size_t size = trees_.size() + 1;
    std::vector<ExprPtr> out;
    if (size == 1) {
      out.push_back(zero());
      out.push_back(succ());
    }
    if (size >= 2) {
      auto n = static_cast<std::uint32_t>(size - 1);
      for (std::uint32_t k = 1; k <= n; ++k) out.push_back(proj(k, n));
    }
    // (C f g1..gm) and (R base step): distribute size-1 over the children.
    std::vector<std::size_t> cur;
    for (std::size_t parts = 2; parts + 1 <= size; ++parts) {
      partitions(size - 1, parts, cur, [&](const std::vector<std::size_t>& split) {
        std::vector<std::size_t> idx(split.size(), 0);
        while (true) {
          std::vector<ExprPtr> kids;
          kids.reserve(split.size());
          bool ok = true;
          for (std::size_t i = 0; i < split.size(); ++i) {
            const auto& pool = trees_[split[i] - 1];
            if (idx[i] >= pool.size()) {
              ok = false;
              break;
            }
            kids.push_back(pool[idx[i]]);
          }
          if (ok) {
            std::vector<ExprPtr> gs(kids.begin() + 1, kids.end());
            out.push_back(comp(kids[0], gs));
            if (split.size() == 2) out.push_back(primrec(kids[0], kids[1]));
          }
          // advance the mixed-radix counter over child pools
          std::size_t p = 0;
          for (; p < split.size(); ++p) {
            if (++idx[p] < trees_[split[p] - 1].size()) break;
            idx[p] = 0;
          }
          if (p == split.size()) break;
        }
      });
    }
    trees_.push_back(std::move(out));
  }
  return trees_[s - 1];
}

void Enumerator::ensure_class(std::size_t s) {
  while (class_end_.size() < s) {
    std::size_t size = class_end_.size() + 1;
    std::vector<ExprPtr> keep;
    for (const auto& e : trees_of_size(size)) {
      ArityReport r = check(*e);
      if (usable_at(r, 1)) keep.push_back(e);
    }
    std::sort(keep.begin(), keep.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return structural_cmp(*a, *b) < 0; });
    flat_.insert(flat_.end(), keep.begin(), keep.end());
    class_end_.push_back(flat_.size());
  }
}

ExprPtr Enumerator::at(std::uint64_t index) {
  std::size_t s = 1;
  while (true) {
    ensure_class(s);
    if (class_end_[s - 1] > index) return flat_[index];
    ++s;
  }
}

std::uint64_t Enumerator::count_up_to_size(std::size_t s) {
  ensure_class(s);
  return class_end_[s - 1];
}

}  // namespace ecn::prf

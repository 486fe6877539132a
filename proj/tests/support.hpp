#pragma once

#include <memory>
#include <random>
#include <vector>

#include "k2ms/manin.hpp"

namespace support {

using namespace k2ms;

// Random combination of a basis of validated symbols, revalidated.
inline ManinTable random_symbol(const std::vector<ManinTable>& basis, const std::shared_ptr<const PointSet>& pts,
                                const Nebentype& chi, std::mt19937_64& rng) {
  const Field f(chi.module().p);
  Vec flat(pts->points().size() * chi.dim(), 0);
  std::uniform_int_distribution<u32> coef(0, chi.module().p - 1);
  for (const ManinTable& b : basis) f.axpy(flat, coef(rng), b.flat());
  ManinTable e(pts, chi.module(), std::move(flat));
  validate(e, chi);
  return e;
}

}  // namespace support

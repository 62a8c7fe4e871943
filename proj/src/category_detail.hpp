#pragma once
#include <string>
#include <vector>

#include "acat/category.hpp"

// helpers shared between the category and functor translation units
namespace acat::detail {

CVect named(const AinfCtx& ctx, const DualElt& d);
DualElt tipped(const AinfCtx& ctx, const CVect& v);

// Coordinates of the class of v among the chosen representatives: solves
// [reps | image] xi = v and returns the reps block. Throws when v is not a
// cocycle of the expected degree and bigrade.
std::vector<uint64_t> class_coords(const AinfCtx& ctx, const HomComplex& hc,
                                   const HomologyTable& H, const CVect& v, int d,
                                   const std::string& what);

// rank of the map induced on homology by the chain map F, given source
// representatives and the target image columns
size_t induced_rank(const Field* f, const Mat& F, const std::vector<std::vector<uint64_t>>& reps,
                    const Mat& image);

std::string subset_str(const std::vector<int>& P);
std::string vec_str(const std::vector<uint64_t>& v);

}  // namespace acat::detail

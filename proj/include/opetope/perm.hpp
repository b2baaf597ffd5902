#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace opetope {

/// A permutation of {0, ..., k-1}, stored as its image sequence.
///
/// Convention: the symmetric action sends f in Q(x_1..x_k; x) to f.sigma in
/// Q(x_sigma(1)..x_sigma(k); x), so (f.s).t = f.(s o t) with o the ordinary
/// composition of functions (apply t first). compose() below follows that.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> image);

  static Perm identity(std::size_t degree);
  /// One-based image, as written in JSON files and the CLI.
  static Perm fromOneBased(std::span<const int> image);

  std::size_t degree() const { return image_.size(); }
  int operator()(std::size_t i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  bool isIdentity() const;
  Perm inverse() const;
  std::vector<int> oneBased() const;
  std::string str() const;

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> image_;
};

/// s o t (t applied first). Throws std::invalid_argument on degree mismatch.
Perm composePerm(const Perm& s, const Perm& t);

/// The block permutation in S_{m_1+...+m_k} induced by s in S_k: the block of
/// size m_{s(i)} at position i of the result is read from block s(i) of the
/// original arrangement, order within blocks preserved.
Perm blockPerm(const Perm& s, std::span<const std::size_t> arities);

/// Block-diagonal permutation obtained by juxtaposing the given ones.
Perm juxtaposePerms(std::span<const Perm> parts);

/// All permutations of degree k in lexicographic order of their images.
std::vector<Perm> allPerms(std::size_t k);

}  // namespace opetope

#include "opetope/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace opetope {

Perm::Perm(std::vector<int> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || static_cast<std::size_t>(v) >= image_.size() || seen[v])
      throw std::invalid_argument("not a permutation image: " + str());
    seen[v] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::fromOneBased(std::span<const int> image) {
  std::vector<int> img(image.begin(), image.end());
  for (int& v : img) --v;
  return Perm(std::move(img));
}

bool Perm::isIdentity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != static_cast<int>(i)) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<int>(i);
  return Perm(std::move(inv));
}

std::vector<int> Perm::oneBased() const {
  std::vector<int> out(image_);
  for (int& v : out) ++v;
  return out;
}

std::string Perm::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(image_[i] + 1);
  }
  return s + "]";
}

Perm composePerm(const Perm& s, const Perm& t) {
  if (s.degree() != t.degree())
    throw std::invalid_argument("composePerm: degree mismatch " + s.str() + " o " + t.str());
  std::vector<int> img(s.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = s(t(i));
  return Perm(std::move(img));
}

Perm blockPerm(const Perm& s, std::span<const std::size_t> arities) {
  if (s.degree() != arities.size())
    throw std::invalid_argument("blockPerm: " + std::to_string(arities.size()) +
                                " arities for a permutation of degree " +
                                std::to_string(s.degree()));
  std::vector<std::size_t> start(arities.size() + 1, 0);
  for (std::size_t i = 0; i < arities.size(); ++i) start[i + 1] = start[i] + arities[i];
  std::vector<int> img;
  img.reserve(start.back());
  for (std::size_t i = 0; i < s.degree(); ++i) {
    const auto b = static_cast<std::size_t>(s(i));
    for (std::size_t r = 0; r < arities[b]; ++r) img.push_back(static_cast<int>(start[b] + r));
  }
  return Perm(std::move(img));
}

Perm juxtaposePerms(std::span<const Perm> parts) {
  std::vector<int> img;
  int offset = 0;
  for (const auto& p : parts) {
    for (int v : p.image()) img.push_back(v + offset);
    offset += static_cast<int>(p.degree());
  }
  return Perm(std::move(img));
}

std::vector<Perm> allPerms(std::size_t k) {
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Perm> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace opetope

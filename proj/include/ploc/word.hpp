#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ploc {

/// Index of a member of a finite carrier.
using Element = int;

/// A finite sequence of carrier elements. The empty word is allowed.
using Word = std::vector<Element>;

inline Word concat(std::span<const Element> u, std::span<const Element> v) {
  Word w;
  w.reserve(u.size() + v.size());
  w.insert(w.end(), u.begin(), u.end());
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

inline Word subword(std::span<const Element> w, std::size_t begin, std::size_t len) {
  return Word(w.begin() + begin, w.begin() + begin + len);
}

std::string word_to_string(std::span<const Element> w);

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Element x : w) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

}  // namespace ploc

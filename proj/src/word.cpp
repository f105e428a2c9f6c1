#include "qtreekit/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "qtreekit/metric.hpp"

namespace qtreekit {

namespace {

void push_reduced(std::vector<int>& out, int letter) {
  if (letter == 0) throw Error("letter 0 is not a generator");
  if (!out.empty() && out.back() == -letter) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}

}  // namespace

Word::Word(std::vector<int> letters) {
  letters_.reserve(letters.size());
  for (int l : letters) push_reduced(letters_, l);
}

Word Word::generator(int index) {
  if (index == 0) throw Error("generator index must be non-zero");
  Word w;
  w.letters_.push_back(index);
  return w;
}

Word Word::parse(std::string_view text) {
  if (text == "e" || text == "1") return Word();
  std::vector<int> letters;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back(ch - 'a' + 1);
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back(-(ch - 'A' + 1));
    } else {
      throw Error(std::string("invalid letter '") + ch + "' in word");
    }
  }
  return Word(std::move(letters));
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

Word Word::pow(long exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  Word out;
  for (long i = 0; i < std::labs(exponent); ++i) out = out * base;
  return out;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (int l : letters_) {
    const int index = std::abs(l);
    if (index <= 26) {
      out.push_back(static_cast<char>((l > 0 ? 'a' : 'A') + index - 1));
    } else {
      out += (l > 0 ? "g" : "G") + std::to_string(index);
    }
  }
  return out;
}

long Word::exponent_sum(int generator) const {
  long total = 0;
  for (int l : letters_) {
    if (l == generator) ++total;
    if (l == -generator) --total;
  }
  return total;
}

std::size_t Word::letter_count(int generator) const {
  return static_cast<std::size_t>(std::count_if(
      letters_.begin(), letters_.end(), [&](int l) { return std::abs(l) == generator; }));
}

Word operator*(const Word& a, const Word& b) {
  Word out = a;
  for (int l : b.letters_) push_reduced(out.letters_, l);
  return out;
}

Word commutator(const Word& g, const Word& h) { return g * h * g.inverse() * h.inverse(); }

std::vector<Word> word_ball(int generators, std::size_t radius) {
  if (generators < 0) throw Error("negative generator count");
  std::vector<Word> out{Word()};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= radius; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      const int last = out[i].empty() ? 0 : out[i].letters().back();
      for (int g = 1; g <= generators; ++g) {
        for (int letter : {g, -g}) {
          if (letter == -last) continue;
          std::vector<int> next = out[i].letters();
          next.push_back(letter);
          out.emplace_back(std::move(next));
        }
      }
    }
    layer_begin = layer_end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qtreekit

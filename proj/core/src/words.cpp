#include "limitlab/words.hpp"

namespace limitlab {

Word word_inverse(std::string_view w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inverse(*it));
  return out;
}

Word word_reduce(std::string_view w) {
  Word out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() && out.back() == letter_inverse(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Word word_multiply(std::string_view u, std::string_view v) {
  Word out(u);
  for (char c : v) {
    if (!out.empty() && out.back() == letter_inverse(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool word_is_reduced(std::string_view w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == letter_inverse(w[i - 1])) return false;
  }
  return true;
}

bool word_is_valid(std::string_view w, int rank) {
  for (char c : w) {
    if (!is_letter(c) || generator_index(c) >= rank) return false;
  }
  return true;
}

}  // namespace limitlab

#pragma once

// Reduced words in a free group. Generator i is the letter 'a' + i and its
// inverse is the matching upper-case letter; the empty string is the
// identity. Words are always kept freely reduced.

#include <string>
#include <string_view>

namespace limitlab {

using Word = std::string;

inline constexpr int kMaxGenerators = 26;

inline bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_inverse_letter(char c) { return c >= 'A' && c <= 'Z'; }
inline int generator_index(char c) { return is_inverse_letter(c) ? c - 'A' : c - 'a'; }
inline char letter_inverse(char c) { return is_inverse_letter(c) ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c - 'a' + 'A'); }
inline char letter_for(int generator, bool inverse) {
  return static_cast<char>((inverse ? 'A' : 'a') + generator);
}

// Letter order used for enumeration: a, A, b, B, ...
inline int letter_rank(char c) { return 2 * generator_index(c) + (is_inverse_letter(c) ? 1 : 0); }
inline char letter_from_rank(int rank) { return letter_for(rank / 2, rank % 2 == 1); }

Word word_inverse(std::string_view w);
Word word_reduce(std::string_view w);
// Reduced concatenation.
Word word_multiply(std::string_view u, std::string_view v);
bool word_is_reduced(std::string_view w);
// True if every letter names one of `rank` generators.
bool word_is_valid(std::string_view w, int rank);

}  // namespace limitlab

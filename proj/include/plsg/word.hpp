#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace plsg {

  // Letter 2g is generator g and 2g + 1 is its inverse.
  using Letter = std::uint32_t;
  using Word   = std::vector<Letter>;

  constexpr Letter letter(int gen, bool inverse = false) {
    return static_cast<Letter>(2 * gen + (inverse ? 1 : 0));
  }
  constexpr Letter inverse_letter(Letter x) { return x ^ 1U; }
  constexpr int    generator_of(Letter x) { return static_cast<int>(x >> 1); }
  constexpr bool   is_inverse(Letter x) { return (x & 1U) != 0; }

  Word inverse(Word const& w);
  Word concat(Word const& u, Word const& v);
  Word power(Word const& w, int n);

  // Cancels adjacent inverse pairs; idempotent.
  Word free_reduce(Word const& w);

  // Freely reduces, then cancels inverse pairs across the ends.
  Word cyclic_reduce(Word const& w);

  // Least word among the cyclic rotations of w and of its inverse. Assumes
  // w is cyclically reduced.
  Word cyclic_canonical(Word const& w);

  // Net exponent of each generator; size is num_gens.
  std::vector<long> exponent_sums(Word const& w, int num_gens);

  // Replaces every occurrence of generator `gen` with `image` and reduces.
  Word substitute(Word const& w, int gen, Word const& image);

  // Exponent notation: "b^-2 a^-1 b^-1 a b a^-1 b a"; the empty word is "1".
  std::string format_word(Word const& w, std::vector<std::string> const& names);

  // Accepts the output of format_word, optionally with '*' separators.
  Word parse_word(std::string_view text, std::vector<std::string> const& names);

}  // namespace plsg

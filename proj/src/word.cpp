#include "plsg/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace plsg {

  Word inverse(Word const& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) {
      x = inverse_letter(x);
    }
    return out;
  }

  Word concat(Word const& u, Word const& v) {
    Word out;
    out.reserve(u.size() + v.size());
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    return free_reduce(out);
  }

  Word power(Word const& w, int n) {
    Word base = n < 0 ? inverse(w) : w;
    Word out;
    for (int i = 0; i < std::abs(n); ++i) {
      out.insert(out.end(), base.begin(), base.end());
    }
    return free_reduce(out);
  }

  Word free_reduce(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
      if (!out.empty() && out.back() == inverse_letter(x)) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  Word cyclic_reduce(Word const& w) {
    Word        r     = free_reduce(w);
    std::size_t lo    = 0;
    std::size_t hi    = r.size();
    while (hi - lo >= 2 && r[lo] == inverse_letter(r[hi - 1])) {
      ++lo;
      --hi;
    }
    return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
                r.begin() + static_cast<std::ptrdiff_t>(hi));
  }

  Word cyclic_canonical(Word const& w) {
    Word best = w;
    for (Word const& base : {w, inverse(w)}) {
      Word rot = base;
      for (std::size_t i = 0; i < base.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        best = std::min(best, rot);
      }
    }
    return best;
  }

  std::vector<long> exponent_sums(Word const& w, int num_gens) {
    std::vector<long> out(num_gens, 0);
    for (Letter x : w) {
      out.at(generator_of(x)) += is_inverse(x) ? -1 : 1;
    }
    return out;
  }

  Word substitute(Word const& w, int gen, Word const& image) {
    Word inv = inverse(image);
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
      if (generator_of(x) == gen) {
        auto const& part = is_inverse(x) ? inv : image;
        out.insert(out.end(), part.begin(), part.end());
      } else {
        out.push_back(x);
      }
    }
    return free_reduce(out);
  }

  std::string format_word(Word const& w, std::vector<std::string> const& names) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) {
        ++j;
      }
      if (!out.empty()) {
        out += ' ';
      }
      out += names.at(generator_of(w[i]));
      long e = static_cast<long>(j - i) * (is_inverse(w[i]) ? -1 : 1);
      if (e != 1) {
        out += '^' + std::to_string(e);
      }
      i = j;
    }
    return out;
  }

  Word parse_word(std::string_view text, std::vector<std::string> const& names) {
    Word        out;
    std::size_t i = 0;
    auto        skip = [&] {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) {
        ++i;
      }
    };
    skip();
    if (text.substr(i) == "1") {
      return out;
    }
    while (i < text.size()) {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      std::string name(text.substr(start, i - start));
      auto        it = std::find(names.begin(), names.end(), name);
      if (name.empty() || it == names.end()) {
        throw std::invalid_argument("unknown generator '" + name + "' in word");
      }
      int  gen = static_cast<int>(it - names.begin());
      long e   = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t estart = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
          ++i;
        }
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        e = std::stol(std::string(text.substr(estart, i - estart)));
      }
      for (long k = 0; k < std::abs(e); ++k) {
        out.push_back(letter(gen, e < 0));
      }
      skip();
    }
    return free_reduce(out);
  }

}  // namespace plsg

#include "plsg/corpus.hpp"

#include <stdexcept>
#include <string>

namespace plsg {

  std::vector<CorpusEntry> const& bundled_corpus() {
    static std::vector<CorpusEntry> const corpus{
        {"infnotfin_b", ". b . c .\na . c . .\n. a b . .\nb . . . d\nc d . . .\n. . . b c\n"},
        {"infnotfin_b1", "a b c d . .\nb e . . c .\n. . e . a d\n. . . e . a\n"},
        {"infnotfin_b2", "a b c . .\nb d . c .\ne . . . d\n. . d a .\n. . . e a\n"},
        {"ne_free_collision", "a d . .\n. a d .\n. b . c\nc . b a\n"},
        {"ne_rewriting_collision", "a b c .\nb d . c\nc . d .\n. e . a\n"},
        {"disconnected_not_c6", "a b . . .\nb a . . .\n. . c d e\n. . d e c\n. . e c d\n"},
    };
    return corpus;
  }

  Pls corpus_pls(std::string_view name) {
    for (auto const& e : bundled_corpus()) {
      if (e.name == name) {
        return parse_pls(e.grid);
      }
    }
    throw std::out_of_range("no bundled PLS named " + std::string(name));
  }

}  // namespace plsg

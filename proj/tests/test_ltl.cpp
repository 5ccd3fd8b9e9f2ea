#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "macoord/errors.hpp"
#include "macoord/lasso.hpp"
#include "macoord/ltl.hpp"
#include "macoord/ltl_translate.hpp"
#include "macoord/nba.hpp"

using namespace macoord;
using namespace macoord::testing;

namespace {

const Alphabet kPq = {"p", "q"};

Formula parse_pq(const std::string& text) { return parse_ltl(text, kPq); }

constexpr SymbolSet kNone = 0;
constexpr SymbolSet kP = 1;
constexpr SymbolSet kQ = 2;
constexpr SymbolSet kPQ = 3;

}  // namespace

TEST_CASE("parser handles precedence and round-trips through the printer") {
  // Unary binds tightest, then U, then &&, then ||; U associates right.
  CHECK(parse_pq("!p && q") == parse_pq("(!p) && q"));
  CHECK(parse_pq("p U q && p") == parse_pq("(p U q) && p"));
  CHECK(parse_pq("p && q || p") == parse_pq("(p && q) || p"));
  CHECK(parse_pq("p U q U p") == parse_pq("p U (q U p)"));
  CHECK(parse_pq("X p U q") == parse_pq("(X p) U q"));
  CHECK(parse_pq("<> p && q") == parse_pq("(<> p) && q"));
  CHECK(parse_pq("[]<>p") == parse_pq("[] (<> p)"));

  for (const std::string& text : formula_corpus()) {
    Formula f = parse_pq(text);
    // The printed form parses back to the same tree.
    CHECK(parse_pq(print_ltl(f)) == f);
  }
}

TEST_CASE("parse errors report the failing byte offset") {
  auto offset_of = [](const std::string& text) -> std::size_t {
    try {
      parse_ltl(text, kPq);
    } catch (const ParseError& e) {
      return e.offset();
    }
    FAIL("expected ParseError for: ", text);
    return static_cast<std::size_t>(-1);
  };

  CHECK(offset_of("p &&") == 4);      // missing right operand
  CHECK(offset_of("p && && q") == 5); // operator where operand expected
  CHECK(offset_of("(p") == 2);        // unclosed paren
  CHECK(offset_of("p r") == 2);       // trailing junk
  CHECK(offset_of("zz") == 0);        // unknown proposition
  CHECK(offset_of("") == 0);          // empty input
}

TEST_CASE("sc-LTL restriction accepts negation on atoms only and rejects []") {
  CHECK(is_sc_ltl(parse_pq("p && <>(q)")));
  CHECK(is_sc_ltl(parse_pq("!p U q")));
  CHECK(is_sc_ltl(parse_pq("X (p || !q)")));
  CHECK(is_sc_ltl(parse_pq("true")));

  CHECK_FALSE(is_sc_ltl(parse_pq("[] p")));
  CHECK_FALSE(is_sc_ltl(parse_pq("<> [] q")));
  CHECK_FALSE(is_sc_ltl(parse_pq("!(p U q)")));
  CHECK_FALSE(is_sc_ltl(parse_pq("!(p && q)")));
  CHECK_FALSE(is_sc_ltl(parse_pq("!!p")));
}

TEST_CASE("collect_subformulas visits each distinct node once") {
  Formula f = parse_pq("(p U q) && <>(p U q)");
  std::vector<const LtlNode*> subs = collect_subformulas(f);
  for (std::size_t a = 0; a < subs.size(); ++a) {
    for (std::size_t b = a + 1; b < subs.size(); ++b) {
      CHECK(subs[a] != subs[b]);
    }
  }
}

TEST_CASE("word_satisfies implements the temporal operators on lassos") {
  Lasso p_forever{{}, {kP}};
  Lasso never{{}, {kNone}};
  Lasso p_then_q{{kP}, {kQ}};
  Lasso pq_alternate{{}, {kP, kQ}};

  CHECK(word_satisfies(parse_pq("true"), never));
  CHECK(word_satisfies(parse_pq("p"), p_forever));
  CHECK_FALSE(word_satisfies(parse_pq("p"), never));
  CHECK(word_satisfies(parse_pq("!p"), never));
  CHECK(word_satisfies(parse_pq("X q"), p_then_q));
  CHECK_FALSE(word_satisfies(parse_pq("X p"), p_then_q));
  CHECK(word_satisfies(parse_pq("p U q"), p_then_q));
  CHECK_FALSE(word_satisfies(parse_pq("p U q"), p_forever));
  CHECK(word_satisfies(parse_pq("<> q"), p_then_q));
  CHECK(word_satisfies(parse_pq("[] p"), p_forever));
  CHECK_FALSE(word_satisfies(parse_pq("[] p"), p_then_q));
  CHECK(word_satisfies(parse_pq("[] <> p"), pq_alternate));
  CHECK(word_satisfies(parse_pq("[] <> q"), pq_alternate));
  CHECK_FALSE(word_satisfies(parse_pq("<> [] p"), pq_alternate));
  // The prefix never matters for [] <>.
  Lasso junk_prefix{{kQ, kNone, kPQ}, {kP}};
  CHECK(word_satisfies(parse_pq("[] <> p"), junk_prefix));
}

TEST_CASE("constant formulas translate to single-state automata") {
  Nba t = translate_to_nba(parse_pq("true"));
  CHECK(t.num_states == 1);
  CHECK(t.accepting[0]);
  CHECK(nba_accepts_lasso(t, Lasso{{}, {kNone}}));

  Nba f = translate_to_nba(mk_not(mk_true()));
  CHECK(f.num_states == 1);
  CHECK_FALSE(nba_accepts_lasso(f, Lasso{{}, {kNone}}));
  CHECK_FALSE(nba_accepts_lasso(f, Lasso{{kPQ}, {kP, kQ}}));
}

TEST_CASE("translation state budget raises a resource error") {
  TranslateOptions opt;
  opt.max_states = 1;
  CHECK_THROWS_AS(translate_to_nba(parse_pq("[] <> (p U q)"), opt),
                  ResourceLimitError);
}

TEST_CASE("recurring eventually-p automaton agrees with the lasso oracle") {
  Formula f = parse_ltl("[] <> p", {"p"});
  Nba a = translate_to_nba(f);
  int checked = 0;
  for_all_lassos(1, 6, [&](const Lasso& w) {
    CHECK(nba_accepts_lasso(a, w) == word_satisfies(f, w));
    ++checked;
  });
  CHECK(checked > 100);
}

TEST_CASE("every corpus formula matches the oracle on short lassos") {
  // The acceptance gate runs the full bound; this keeps a quick slice in the
  // unit suite so translation regressions fail fast.
  for (const std::string& text : formula_corpus()) {
    Formula f = parse_pq(text);
    Nba a = translate_to_nba(f);
    for_all_lassos(2, 4, [&](const Lasso& w) {
      if (nba_accepts_lasso(a, w) != word_satisfies(f, w)) {
        FAIL_CHECK("disagreement on ", text);
      }
    });
  }
}

TEST_CASE("guard and dot renderings name the propositions") {
  Nba a = translate_to_nba(parse_pq("p U q"));
  std::string dot = a.to_dot(kPq);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("q") != std::string::npos);
}

#include <doctest.h>

#include <string>

#include "mthint/conllu.hpp"

using namespace mthint;

namespace {

// Columns: ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS MISC
const char* kTwoSentences =
    "# sent_id = s1\n"
    "# text = ani ohev lehem\n"
    "1\tani\tani\tPRON\t_\tNumber=Sing|Person=1\t2\tnsubj\t_\t_\n"
    "2\tohev\tahav\tVERB\t_\tGender=Masc|Number=Sing\t0\troot\t_\t_\n"
    "3\tlehem\tlehem\tNOUN\t_\tGender=Masc|Number=Sing\t2\tobj\t_\t_\n"
    "\n"
    "# sent_id = s2\n"
    "1\tani\tani\tPRON\t_\tNumber=Sing|Person=1\t2\tnsubj\t_\t_\n"
    "2\tsmeha\tsameah\tADJ\t_\tGender=Fem|Number=Sing\t0\troot\t_\t_\n";

}  // namespace

TEST_CASE("a well-formed two-sentence document parses") {
  auto sentences = parse_conllu(kTwoSentences);
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[0].sentence_id == "s1");
  CHECK(sentences[1].sentence_id == "s2");
  REQUIRE(sentences[0].tokens.size() == 3);
  const Token& verb = sentences[0].tokens[1];
  CHECK(verb.form == "ohev");
  CHECK(verb.lemma == "ahav");
  CHECK(verb.upos == "VERB");
  CHECK(verb.head == 0);
  CHECK(verb.deprel == "root");
  CHECK(verb.has_feat("Gender", "Masc"));
  CHECK(verb.has_feat("Number", "Sing"));
  CHECK(!verb.has_feat("Gender", "Fem"));
  CHECK(sentences[0].root() == &verb);
  CHECK(sentences[0].find(1)->form == "ani");
  CHECK(sentences[0].find(4) == nullptr);
}

TEST_CASE("a multi-valued gender feature becomes a value set") {
  std::string doc =
      "1\tani\tani\tPRON\t_\tPerson=1\t2\tnsubj\t_\t_\n"
      "2\trotse\tratsa\tVERB\t_\tGender=Fem,Masc|Number=Sing\t0\troot\t_\t_\n";
  auto sentences = parse_conllu(doc);
  const auto* genders = sentences[0].tokens[1].feat("Gender");
  REQUIRE(genders != nullptr);
  CHECK(genders->size() == 2);
  CHECK(genders->count("Fem") == 1);
  CHECK(genders->count("Masc") == 1);
}

TEST_CASE("underscore FEATS means no features") {
  std::string doc = "1\tx\tx\tNOUN\t_\t_\t0\troot\t_\t_\n";
  auto sentences = parse_conllu(doc);
  CHECK(sentences[0].tokens[0].feats.empty());
}

TEST_CASE("a head past the last token is malformed, with its line number") {
  std::string doc =
      "1\tani\tani\tPRON\t_\t_\t5\tnsubj\t_\t_\n"
      "2\tohev\tahav\tVERB\t_\t_\t0\troot\t_\t_\n";
  try {
    parse_conllu(doc);
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    std::string msg = e.what();
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(msg.find("past last token") != std::string::npos);
  }
}

TEST_CASE("non-contiguous ids are rejected") {
  std::string doc =
      "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "3\tb\tb\tNOUN\t_\t_\t1\tobj\t_\t_\n";
  CHECK_THROWS_AS(parse_conllu(doc), NonContiguousIds);
}

TEST_CASE("a sentence without a root is rejected") {
  std::string doc =
      "1\ta\ta\tNOUN\t_\t_\t2\tobj\t_\t_\n"
      "2\tb\tb\tNOUN\t_\t_\t1\tobj\t_\t_\n";
  CHECK_THROWS_AS(parse_conllu(doc), MissingRoot);
}

TEST_CASE("self-headed tokens and double roots are malformed") {
  CHECK_THROWS_AS(parse_conllu("1\ta\ta\tNOUN\t_\t_\t1\tobj\t_\t_\n"), MalformedLine);
  std::string two_roots =
      "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n";
  CHECK_THROWS_AS(parse_conllu(two_roots), MalformedLine);
}

TEST_CASE("multiword ranges and empty nodes are kept out of the token list") {
  std::string doc =
      "1-2\tdulehem\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tdu\tdu\tADP\t_\t_\t2\tcase\t_\t_\n"
      "2\tlehem\tlehem\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "2.1\tghost\tghost\tNOUN\t_\t_\t_\t_\t_\t_\n";
  auto sentences = parse_conllu(doc);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].tokens.size() == 2);
  CHECK(sentences[0].excluded_lines.size() == 2);
}

TEST_CASE("a line with the wrong column count reports its number") {
  std::string doc =
      "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "\n"
      "1\tb\tb\tNOUN\t_\t_\t0\n";
  try {
    parse_conllu(doc);
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("carriage returns and a missing trailing blank line are tolerated") {
  std::string doc =
      "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\r\n"
      "\r\n"
      "1\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_";
  auto sentences = parse_conllu(doc);
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[1].tokens[0].form == "b");
}

TEST_CASE("an empty document parses to no sentences") {
  CHECK(parse_conllu("").empty());
  CHECK(parse_conllu("\n\n").empty());
}

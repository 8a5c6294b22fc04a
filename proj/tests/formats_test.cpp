#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "ontoverse/formats.hpp"
#include "support/generators.hpp"

using namespace ontoverse;

namespace {

std::string fixture(const std::string& name) { return std::string(ONTOVERSE_FIXTURE_DIR) + "/" + name; }

// Line number carried by the parse error, or 0 if the input parsed.
template <class Parse>
std::size_t error_line(Parse parse, const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::size_t ovf_error(const std::string& text) { return error_line([](const std::string& t) { parse_ovf(t); }, text); }

const std::string kValidOvf = R"(ontoverse-version: 1
id: v1
document: doc
domain: dogs
logic: classbox
vocab: Dog GermanShepherd
axiom a1: DisjointWith(Dog, GermanShepherd)
interp axiom a1 => dogs_disjoint_gs
)";

// Every failure while parsing a mutated document must be a ParseError with a line.
template <class Parse>
void fuzz(gen::Rng& rng, const std::string& seed_text, Parse parse) {
    for (int i = 0; i < 200; ++i) {
        std::string text = seed_text;
        for (std::size_t k = 0, n = rng.between(1, 3); k < n; ++k) text = gen::mutate(rng, text);
        try {
            parse(text);
        } catch (const ParseError& e) {
            ASSERT_GE(e.line(), 1u) << text;
            ASSERT_EQ(std::string(e.what()).rfind("line " + std::to_string(e.line()) + ": ", 0), 0u);
        } catch (const std::exception& e) {
            FAIL() << "non-parse error '" << e.what() << "' for:\n" << text;
        }
    }
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ontoverse-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    void write(const std::string& name, const std::string& text) const {
        std::filesystem::create_directories((path / name).parent_path());
        std::ofstream(path / name) << text;
    }
};

} // namespace

TEST(Ovf, ParsesClassAxiomVersion) {
    const auto v = load_ovf(fixture("dogs_named.ovf"));
    EXPECT_EQ(v.theory.logic, LogicTag::ClassBox);
    ASSERT_EQ(v.theory.axioms.size(), 1u);
    EXPECT_EQ(v.theory.axioms.front().sentence, Sentence::disjoint_with("Dog", "GermanShepherd"));
    EXPECT_EQ(v.theory.vocabulary, (SymbolSet{"Dog", "GermanShepherd"}));
}

TEST(Ovf, MissingCommaNamesTheLine) {
    std::string text = kValidOvf;
    text.replace(text.find("DisjointWith(Dog, GermanShepherd)"), 33, "DisjointWith(Dog Dog)");
    EXPECT_EQ(ovf_error(text), 7u);
    try {
        parse_ovf(text);
    } catch (const ParseError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 7: ", 0), 0u);
    }
}

TEST(Ovf, Errors) {
    EXPECT_EQ(ovf_error(kValidOvf), 0u);
    EXPECT_EQ(ovf_error("# comment\n\nontoverse-version: 2\n"), 3u);
    EXPECT_EQ(ovf_error(""), 1u);
    EXPECT_EQ(ovf_error(kValidOvf + "colour: blue\n"), 9u);
    std::string bad_logic = kValidOvf;
    bad_logic.replace(bad_logic.find("classbox"), 8, "owl2");
    EXPECT_EQ(ovf_error(bad_logic), 5u);
    EXPECT_EQ(ovf_error(kValidOvf + "axiom a1: SubClassOf(Dog, Dog)\n"), 9u);
    EXPECT_EQ(ovf_error(kValidOvf + "annotation a1 kind=assertive: \"x\"\n"), 9u);
    EXPECT_EQ(ovf_error(kValidOvf + "annotation n1 kind=loud: \"x\"\n"), 9u);
    EXPECT_EQ(ovf_error(kValidOvf + "annotation n1 kind=assertive: \"unterminated\n"), 9u);
    EXPECT_EQ(ovf_error(kValidOvf + "interp axiom a9 => p\n"), 9u);
    EXPECT_EQ(ovf_error(kValidOvf + "interp sentence SubClassOf(Dog) => p\n"), 9u);
    EXPECT_EQ(ovf_error(kValidOvf + "interp axiom a1 => other\n"), 9u);
    EXPECT_EQ(ovf_error(kValidOvf + "id: again\n"), 9u);
    std::string no_vocab = kValidOvf;
    no_vocab.erase(no_vocab.find("vocab:"), no_vocab.find('\n', no_vocab.find("vocab:")) + 1 - no_vocab.find("vocab:"));
    EXPECT_EQ(ovf_error(no_vocab), 7u);
}

TEST(Ovf, CommentsAndQuoting) {
    const std::string text = kValidOvf + "annotation n1 kind=nonassertive target=Dog: \"a # b \\\"q\\\"\" # trailing\n"
                                         "meta creator: \"x\\ny\"\n";
    const auto v = parse_ovf(text);
    ASSERT_EQ(v.theory.annotations.size(), 1u);
    EXPECT_EQ(v.theory.annotations.front().text, "a # b \"q\"");
    EXPECT_EQ(v.theory.annotations.front().target, "Dog");
    EXPECT_EQ(v.metadata.at("creator"), "x\ny");
}

TEST(Ovf, RoundTrip) {
    gen::Rng rng(51);
    for (std::size_t i = 0; i < 300; ++i) {
        const auto v = gen::any_version(rng, i);
        const std::string text = serialize_ovf(v);
        const auto back = parse_ovf(text);
        ASSERT_EQ(back, v) << text;
        ASSERT_EQ(serialize_ovf(back), text);
    }
}

TEST(Ovf, FixturesRoundTrip) {
    for (const char* name : {"dogs_named.ovf", "sciences_misspelled.ovf", "sciences.ovf", "class_catalogue.ovf", "dogs_labelled.ovf", "dogs_commented.ovf", "phone.ovf", "gap.ovf"}) {
        const auto v = load_ovf(fixture(name));
        EXPECT_EQ(parse_ovf(serialize_ovf(v)), v) << name;
    }
}

TEST(Ovf, MutatedInputsFailWithLineNumbers) {
    gen::Rng rng(53);
    fuzz(rng, serialize_ovf(load_ovf(fixture("class_catalogue.ovf"))), [](const std::string& t) { parse_ovf(t); });
    fuzz(rng, kValidOvf, [](const std::string& t) { parse_ovf(t); });
}

TEST(Imports, ResolvedRelativeToImportingFile) {
    const auto split = load_ovf(fixture("dogs_commented_split.ovf"));
    const auto whole = load_ovf(fixture("dogs_commented.ovf"));
    EXPECT_EQ(split.theory.axioms, whole.theory.axioms);
    EXPECT_EQ(split.interpretation, whole.interpretation);
}

TEST(Imports, CycleIsAnError) {
    TempDir dir;
    const std::string head = "ontoverse-version: 1\ndocument: d\ndomain: x\nlogic: classbox\nvocab: A\n";
    dir.write("a.ovf", head + "id: a\nimport: sub/b.ovf\n");
    dir.write("sub/b.ovf", head + "id: b\nimport: ../a.ovf\n");
    try {
        load_ovf(dir.path / "a.ovf");
        FAIL() << "cycle accepted";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos) << e.what();
    }
}

TEST(Imports, DuplicateIdsAndForeignDomains) {
    TempDir dir;
    const std::string head = "ontoverse-version: 1\ndocument: d\nlogic: classbox\nvocab: A\n";
    dir.write("base.ovf", head + "id: base\ndomain: x\naxiom a1: SubClassOf(A, A)\n");
    dir.write("dup.ovf", head + "id: dup\ndomain: x\nimport: base.ovf\naxiom a1: DisjointWith(A, A)\n");
    dir.write("foreign.ovf", head + "id: f\ndomain: y\nimport: base.ovf\n");
    dir.write("missing.ovf", head + "id: m\ndomain: x\nimport: nowhere.ovf\n");
    EXPECT_THROW(load_ovf(dir.path / "dup.ovf"), Error);
    EXPECT_THROW(load_ovf(dir.path / "foreign.ovf"), Error);
    EXPECT_THROW(load_ovf(dir.path / "missing.ovf"), Error);
    EXPECT_EQ(load_ovf(dir.path / "base.ovf").theory.axioms.size(), 1u);
}

TEST(Dom, FixtureWithStates) {
    const auto f = load_dom(fixture("gap.dom"));
    EXPECT_EQ(f.space.size(), 2u);
    ASSERT_TRUE(f.real_domain);
    EXPECT_EQ(f.real_domain->states.size(), 2u);
    EXPECT_FALSE(load_dom(fixture("classes.dom")).real_domain);
}

TEST(Dom, Errors) {
    auto dom_error = [](const std::string& t) { return error_line([](const std::string& x) { parse_dom(x); }, t); };
    const std::string head = "ontoverse-domain: 1\nid: d\nprops: p1 p2\n";
    EXPECT_EQ(dom_error(head), 0u);
    EXPECT_EQ(dom_error(head + "conflict: p1\n"), 4u);
    EXPECT_EQ(dom_error(head + "conflict: p1 p9\n"), 4u);
    EXPECT_EQ(dom_error(head + "state s1: p1\n"), 4u);         // not maximal
    EXPECT_EQ(dom_error(head + "conflict: p1 p2\nstate s1: p1 p2\n"), 5u); // inconsistent
    EXPECT_EQ(dom_error(head + "weather: fine\n"), 4u);
    EXPECT_EQ(dom_error("ontoverse-domain: 1\nid: d\n"), 2u);
}

TEST(Dom, RoundTrip) {
    gen::Rng rng(57);
    for (std::size_t i = 0; i < 300; ++i) {
        const auto f = gen::domain_file(rng, i);
        const std::string text = serialize_dom(f);
        ASSERT_EQ(parse_dom(text), f) << text;
    }
}

TEST(Dom, MutatedInputsFailWithLineNumbers) {
    gen::Rng rng(59);
    fuzz(rng, serialize_dom(load_dom(fixture("phone.dom"))), [](const std::string& t) { parse_dom(t); });
}

TEST(Bpc, Errors) {
    auto bpc_error = [](const std::string& t) { return error_line([](const std::string& x) { parse_bpc(x); }, t); };
    const std::string head = "ontoverse-bpc: 1\nid: c\ndomain: d\n";
    EXPECT_EQ(bpc_error(head + "state s1: p=true\n"), 0u);
    EXPECT_EQ(bpc_error(head), 3u);
    EXPECT_EQ(bpc_error(head + "state s1: p=maybe\n"), 4u);
    EXPECT_EQ(bpc_error(head + "state s1: p=true, p=false\n"), 4u);
    EXPECT_EQ(bpc_error(head + "state s1: p=true\nstate s1: q=true\n"), 5u);
    EXPECT_EQ(bpc_error(head + "state s1: p=true,\n"), 4u);
    const auto empty = parse_bpc(head + "state s1:\n");
    EXPECT_TRUE(empty.states.at("s1").empty());
}

TEST(Bpc, RoundTrip) {
    gen::Rng rng(61);
    for (std::size_t i = 0; i < 300; ++i) {
        const auto c = gen::bpc(rng, i);
        const std::string text = serialize_bpc(c);
        ASSERT_EQ(parse_bpc(text), c) << text;
    }
}

TEST(Bpc, MutatedInputsFailWithLineNumbers) {
    gen::Rng rng(63);
    fuzz(rng, serialize_bpc(load_bpc(fixture("designer.bpc"))), [](const std::string& t) { parse_bpc(t); });
}

TEST(Manifest, Fixture) {
    const auto g = load_manifest(fixture("ontologies.graph"));
    EXPECT_EQ(g.realizations("dogs_doc"), (std::vector<std::string>{"dogs_named", "dogs_commented", "dogs_labelled"}));
    EXPECT_EQ(g.realizations("sciences_doc"), (std::vector<std::string>{"sciences_misspelled", "sciences"}));
    EXPECT_EQ(g.edges().size(), 3u);
}

TEST(Manifest, Errors) {
    auto graph_error = [](const std::string& t) {
        return error_line([](const std::string& x) { parse_manifest(x); }, t);
    };
    const std::string head = "ontoverse-graph: 1\ndocument d\nversion a file=a.ovf\nversion b file=b.ovf\n";
    EXPECT_EQ(graph_error(head + "derives b from a kind=revision\n"), 0u);
    EXPECT_EQ(graph_error(head + "derives b from a kind=revision\nderives a from b kind=revision\n"), 6u);
    EXPECT_EQ(graph_error(head + "derives b from a kind=undo\n"), 5u);
    EXPECT_EQ(graph_error(head + "derives b from z kind=revision\n"), 5u);
    EXPECT_EQ(graph_error(head + "version a file=x.ovf\n"), 5u);
    EXPECT_EQ(graph_error("ontoverse-graph: 1\nversion a file=a.ovf\n"), 2u);
}

TEST(Manifest, RoundTrip) {
    gen::Rng rng(67);
    for (int i = 0; i < 300; ++i) {
        const auto g = gen::graph(rng);
        const std::string text = serialize_manifest(g);
        ASSERT_EQ(parse_manifest(text), g) << text;
    }
}

TEST(Manifest, MutatedInputsFailWithLineNumbers) {
    gen::Rng rng(71);
    fuzz(rng, serialize_manifest(load_manifest(fixture("ontologies.graph"))),
         [](const std::string& t) { parse_manifest(t); });
}

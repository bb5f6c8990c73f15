#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqa/extractor.hpp"

using namespace sqa;

namespace {

SourceUnit java(const std::string& content) { return {"test.java", Language::JavaLike, content}; }
SourceUnit clike(const std::string& content) { return {"test.c", Language::CLike, content}; }

std::vector<Token> body_tokens(const std::string& body) {
    return tokenize(java("{" + body + "}"));
}

}  // namespace

TEST_CASE("empty content tokenizes to an empty list") {
    CHECK(tokenize(java("")).empty());
}

TEST_CASE("hand-tokenized line matches") {
    auto toks = tokenize(clike("int a; // note"));
    REQUIRE(toks.size() == 6);
    CHECK(toks[0].kind == TokenKind::Keyword);
    CHECK(toks[0].text == "int");
    CHECK(toks[1].kind == TokenKind::Whitespace);
    CHECK(toks[2].kind == TokenKind::Identifier);
    CHECK(toks[2].text == "a");
    CHECK(toks[3].kind == TokenKind::Punctuation);
    CHECK(toks[3].text == ";");
    CHECK(toks[5].kind == TokenKind::Comment);
    CHECK(toks[5].text == "// note");
}

TEST_CASE("unterminated block comment reports its line") {
    try {
        tokenize(java("int a;\nint b; /* open\n"));
        FAIL("expected UnterminatedConstruct");
    } catch (const UnterminatedConstruct& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("unterminated string reports its line") {
    CHECK_THROWS_AS(tokenize(java("x = \"abc\n")), UnterminatedConstruct);
}

TEST_CASE("token round-trip reproduces the source") {
    const std::string fixtures[] = {
        "class A { int x = 0; /* multi\nline */ void f() { g(\"str with { brace\"); } }",
        "int main() {\n  // comment\n  return 1 ? 2 : 3;\n}\n",
        "#define FOO(x) ((x)+1)\nint f();\n",
        "a && b || c; x->y.z::w; i++ == --j;",
    };
    for (const auto& src : fixtures) {
        for (auto lang : {Language::CLike, Language::JavaLike}) {
            SourceUnit u{"f", lang, src};
            std::string rebuilt;
            for (const auto& t : tokenize(u)) rebuilt += t.text;
            CHECK(rebuilt == src);
        }
    }
}

TEST_CASE("braces inside strings and comments are structurally inert") {
    auto r = extract_unit(java("class A { void f() { g(\"}}}\"); /* { */ } }"));
    REQUIRE(r.fragment.classes.size() == 1);
    REQUIRE(r.fragment.classes[0].methods.size() == 1);
}

TEST_CASE("straight-line body has complexity 1") {
    CHECK(cyclomatic(body_tokens("a = 1; b = 2; return a + b;")) == 1);
}

TEST_CASE("one if and one while give complexity 3") {
    // Hand-drawn CFG: entry, if-cond, then, while-cond, while-body, exit.
    // n = 6, e = 7 (entry->cond, cond->then, cond->while, then->while,
    // while->body, body->while, while->exit), p = 1: e - n + 2p = 3.
    CHECK(cyclomatic(body_tokens("if (a) { x(); } while (b) { y(); }")) == 3);
}

TEST_CASE("three-case switch gives complexity 4") {
    CHECK(cyclomatic(body_tokens(
              "switch (v) { case 1: a(); break; case 2: b(); break; case 3: c(); break; }")) == 4);
}

TEST_CASE("short-circuit operators and ternary count as decisions") {
    CHECK(cyclomatic(body_tokens("if (a && b || c) { x = p ? q : r; }")) == 5);
}

TEST_CASE("complexity ignores decision keywords inside strings and comments") {
    CHECK(cyclomatic(body_tokens("s = \"if while for\"; /* if if if */ t();")) == 1);
}

TEST_CASE("reformatting does not change complexity") {
    std::string compact = "if(a){x();}else{while(b){y();}}";
    std::string spread = "if (a)\n{\n  x();  // then\n}\nelse\n{\n  while (b)\n  {\n    y();\n  }\n}";
    CHECK(cyclomatic(body_tokens(compact)) == cyclomatic(body_tokens(spread)));
}

TEST_CASE("minimal empty class") {
    auto r = extract_unit(java("class A {}"));
    REQUIRE(r.fragment.classes.size() == 1);
    CHECK(r.fragment.classes[0].name == "A");
    CHECK(r.fragment.classes[0].methods.empty());
    CHECK(r.fragment.classes[0].data_members.empty());
    CHECK(r.warnings.empty());
}

TEST_CASE("class with private field and getter") {
    auto r = extract_unit(java(
        "class A {\n"
        "  private int x;\n"
        "  public int get() { return x; }\n"
        "}\n"));
    REQUIRE(r.fragment.classes.size() == 1);
    const auto& a = r.fragment.classes[0];
    REQUIRE(a.data_members.size() == 1);
    CHECK(a.data_members[0].name == "x");
    CHECK(a.data_members[0].visibility == Visibility::Private);
    CHECK(a.data_members[0].kind == DataKind::Primitive);
    REQUIRE(a.methods.size() == 1);
    const auto& get = a.methods[0];
    CHECK(get.name == "get");
    CHECK(get.visibility == Visibility::Public);
    CHECK(get.return_type == "int");
    CHECK(get.cyclomatic_complexity == 1);
    REQUIRE(get.accessed_members.size() == 1);
    CHECK(get.accessed_members[0] == "x");
}

TEST_CASE("inheritance, parameters and counts") {
    auto r = extract_unit(java(
        "package app;\n"
        "public class Child extends Base {\n"
        "  private Helper helper;\n"
        "  protected static final int LIMIT = 10;\n"
        "  public void run(int n, Data& d) {\n"
        "    // setup\n"
        "    int i = 0;\n"
        "    while (i < n) { helper.step(d); i++; }\n"
        "  }\n"
        "}\n"));
    REQUIRE(r.fragment.classes.size() == 1);
    const auto& c = r.fragment.classes[0];
    CHECK(c.package_name == "app");
    CHECK(c.visibility == Visibility::Public);
    REQUIRE(c.ancestor_name.has_value());
    CHECK(*c.ancestor_name == "Base");
    REQUIRE(c.data_members.size() == 2);
    CHECK(c.data_members[0].kind == DataKind::UserDefined);
    CHECK(c.data_members[1].is_static);
    CHECK(c.data_members[1].is_constant);
    REQUIRE(c.methods.size() == 1);
    const auto& run = c.methods[0];
    REQUIRE(run.parameters.size() == 2);
    CHECK(run.parameters[0].passing_mode == PassingMode::ByValue);
    CHECK(run.parameters[1].passing_mode == PassingMode::ByReference);
    CHECK(run.cyclomatic_complexity == 2);
    // statements: int i=0; while-header; helper.step(d); i++;
    CHECK(run.statement_count == 4);
    CHECK(run.comment_line_count == 1);
    CHECK(run.loc == 4);  // five body lines, one comment-only
    // call through a typed member resolves the receiver class
    REQUIRE(run.invoked_targets.size() == 1);
    CHECK(run.invoked_targets[0] == CallTarget{"Helper", "step"});
    REQUIRE(r.fragment.packages.size() == 1);
    CHECK(r.fragment.packages[0].name == "app");
}

TEST_CASE("free functions in the C-like subset") {
    auto r = extract_unit(clike(
        "#include <stdio.h>\n"
        "static int helper(int a) { return a * 2; }\n"
        "int main(void) {\n"
        "  int v = helper(3);\n"
        "  if (v > 0) printf(\"%d\", v);\n"
        "  return 0;\n"
        "}\n"));
    REQUIRE(r.fragment.free_functions.size() == 2);
    const auto& helper = r.fragment.free_functions[0];
    CHECK(helper.name == "helper");
    CHECK(helper.visibility == Visibility::Private);  // file-static
    const auto& main_fn = r.fragment.free_functions[1];
    CHECK(main_fn.name == "main");
    CHECK(main_fn.cyclomatic_complexity == 2);
    bool calls_helper = false;
    for (const auto& t : main_fn.invoked_targets)
        if (t.method_name == "helper") calls_helper = true;
    CHECK(calls_helper);
    CHECK(r.fragment.total_loc == 7);
}

TEST_CASE("unsupported regions are skipped with warnings, not failures") {
    auto r = extract_unit(java(
        "class Good { void ok() { } }\n"
        "@@@ utterly unparseable @@@ ;\n"
        "class AlsoGood { }\n"));
    CHECK(r.fragment.classes.size() == 2);
    CHECK(r.warnings.size() >= 1);
}

TEST_CASE("interface declarations are skipped with a warning") {
    auto r = extract_unit(java("interface I { void f(); }\nclass A {}\n"));
    CHECK(r.fragment.classes.size() == 1);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].reason.find("interface") != std::string::npos);
}

TEST_CASE("constructors and abstract methods parse") {
    auto r = extract_unit(java(
        "abstract class Shape {\n"
        "  public Shape(int id) { }\n"
        "  public abstract double area();\n"
        "}\n"));
    REQUIRE(r.fragment.classes.size() == 1);
    const auto& c = r.fragment.classes[0];
    REQUIRE(c.methods.size() == 2);
    CHECK(c.methods[0].name == "Shape");
    CHECK(c.methods[1].name == "area");
    CHECK(c.methods[1].cyclomatic_complexity == 1);
    CHECK(c.methods[1].overrides_ancestor);  // virtual/abstract marker
}

TEST_CASE("isolated method has zero fan in and out") {
    auto r = extract_unit(java("class A { void f() { int x = 1; } }"));
    auto resolved = resolve_couplings(r.fragment);
    const auto& f = resolved.classes[0].methods[0];
    CHECK(f.fan_in == 0);
    CHECK(f.fan_out == 0);
}

TEST_CASE("call graph fan in/out: f->g, h->g") {
    auto r = extract_unit(java(
        "class A {\n"
        "  void f() { g(); }\n"
        "  void g() { int x = 0; }\n"
        "  void h() { g(); }\n"
        "}\n"));
    auto resolved = resolve_couplings(r.fragment);
    const auto& methods = resolved.classes[0].methods;
    const MethodInfo *f = nullptr, *g = nullptr, *h = nullptr;
    for (const auto& m : methods) {
        if (m.name == "f") f = &m;
        if (m.name == "g") g = &m;
        if (m.name == "h") h = &m;
    }
    REQUIRE((f && g && h));
    CHECK(g->fan_in == 2);
    CHECK(g->fan_out == 0);
    CHECK(f->fan_out == 1);
    CHECK(h->fan_out == 1);
}

TEST_CASE("self-recursion does not count toward fan out") {
    auto r = extract_unit(java("class A { void f(int n) { if (n > 0) f(n - 1); } }"));
    auto resolved = resolve_couplings(r.fragment);
    CHECK(resolved.classes[0].methods[0].fan_out == 0);
    CHECK(resolved.classes[0].methods[0].fan_in == 0);
}

TEST_CASE("unresolved targets count in fan_out only, with a warning") {
    auto r = extract_unit(java("class A { void f() { External.call(); } }"));
    std::vector<ExtractionWarning> warnings;
    auto resolved = resolve_couplings(r.fragment, &warnings);
    CHECK(resolved.classes[0].methods[0].fan_out == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].reason.find("unresolved") != std::string::npos);
}

TEST_CASE("cross-package references set afferent/efferent couplings") {
    auto r1 = extract_unit(java("package p1;\nclass A { void f() { B.run(); } }\n"));
    auto r2 = extract_unit(java("package p2;\nclass B { static void run() { } }\n"));
    r1.fragment.system_name = r2.fragment.system_name = "s";
    r1.fragment.version_label = r2.fragment.version_label = "1";
    auto merged = merge({r1.fragment, r2.fragment});
    auto resolved = resolve_couplings(merged);
    REQUIRE(resolved.packages.size() == 2);
    const PackageInfo *p1 = nullptr, *p2 = nullptr;
    for (const auto& p : resolved.packages) {
        if (p.name == "p1") p1 = &p;
        if (p.name == "p2") p2 = &p;
    }
    REQUIRE((p1 && p2));
    CHECK(p1->efferent_couplings == 1);
    CHECK(p1->afferent_couplings == 0);
    CHECK(p2->afferent_couplings == 1);
    CHECK(p2->efferent_couplings == 0);
}

TEST_CASE("override detection by name and arity against the ancestor") {
    auto r = extract_unit(java(
        "class Base { void step(int n) { } }\n"
        "class Derived extends Base { void step(int n) { } void other() { } }\n"));
    auto resolved = resolve_couplings(r.fragment);
    const ClassInfo* derived = nullptr;
    for (const auto& c : resolved.classes)
        if (c.name == "Derived") derived = &c;
    REQUIRE(derived);
    for (const auto& m : derived->methods) {
        if (m.name == "step") CHECK(m.overrides_ancestor);
        if (m.name == "other") CHECK(!m.overrides_ancestor);
    }
}

TEST_CASE("sum of fan_in equals resolved edges and is bounded by fan_out") {
    auto r = extract_unit(java(
        "class A {\n"
        "  void a() { b(); c(); Missing.x(); }\n"
        "  void b() { c(); }\n"
        "  void c() { }\n"
        "}\n"));
    auto resolved = resolve_couplings(r.fragment);
    std::int64_t fan_in_sum = 0, fan_out_sum = 0;
    for (const auto& m : resolved.classes[0].methods) {
        fan_in_sum += m.fan_in;
        fan_out_sum += m.fan_out;
    }
    CHECK(fan_in_sum == 3);       // a->b, a->c, b->c resolve
    CHECK(fan_out_sum == 4);      // Missing.x() stays efferent-only
    CHECK(fan_in_sum <= fan_out_sum);
}

TEST_CASE("extraction fragments validate cleanly") {
    auto r = extract_unit(java(
        "package app;\n"
        "class A extends B { private int x; void f() { x = 1; g(); } void g() { } }\n"
        "class B { }\n"));
    auto resolved = resolve_couplings(r.fragment);
    CHECK(validate_snapshot(resolved).empty());
}

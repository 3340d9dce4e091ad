#include "doctest.h"
#include "bvr/behavior_tree.hpp"

#include <array>

using namespace bvr;

namespace {

struct Ctx {
    std::array<BtStatus, 3> leaf{};
    std::array<int, 3> calls{};
};

using Tree = BehaviorTree<Ctx>;

Tree::Registry registry()
{
    Tree::Registry r;
    for (int i = 0; i < 3; ++i) {
        r.actions["a" + std::to_string(i)] = [i](Ctx& c) {
            ++c.calls[i];
            return c.leaf[i];
        };
    }
    r.conditions["yes"] = [](const Ctx&) { return true; };
    r.conditions["no"] = [](const Ctx&) { return false; };
    return r;
}

// Enumerated semantics: the first child whose status differs from `pass` decides.
BtStatus oracle(BtKind kind, const std::array<BtStatus, 3>& s, int& evaluated)
{
    const BtStatus pass = kind == BtKind::Sequence ? BtStatus::Success : BtStatus::Failure;
    for (int i = 0; i < 3; ++i) {
        evaluated = i + 1;
        if (s[i] != pass) return s[i];
    }
    return pass;
}

}  // namespace

TEST_CASE("exhaustive 3-child truth tables")
{
    const std::array<BtStatus, 3> all{BtStatus::Success, BtStatus::Failure, BtStatus::Running};
    for (const char* kind : {"sequence", "fallback"}) {
        const Tree tree(parse_bt(std::string("(") + kind + " (action a0) (action a1) (action a2))"), registry());
        const BtKind k = std::string(kind) == "sequence" ? BtKind::Sequence : BtKind::Fallback;
        int cases = 0;
        for (BtStatus x : all)
            for (BtStatus y : all)
                for (BtStatus z : all) {
                    Ctx c;
                    c.leaf = {x, y, z};
                    int evaluated = 0;
                    const BtStatus expected = oracle(k, c.leaf, evaluated);
                    CHECK(tree.tick(c) == expected);
                    for (int i = 0; i < 3; ++i) CHECK(c.calls[i] == (i < evaluated ? 1 : 0));
                    ++cases;
                }
        CHECK(cases == 27);
    }
}

TEST_CASE("sequence and fallback worked examples")
{
    Ctx c;
    c.leaf = {BtStatus::Success, BtStatus::Failure, BtStatus::Success};
    const Tree seq(parse_bt("(sequence (action a0) (action a1) (action a2))"), registry());
    CHECK(seq.tick(c) == BtStatus::Failure);
    CHECK(c.calls[2] == 0);

    Ctx d;
    d.leaf = {BtStatus::Failure, BtStatus::Success, BtStatus::Success};
    const Tree fb(parse_bt("(fallback (action a0) (action a1))"), registry());
    CHECK(fb.tick(d) == BtStatus::Success);
}

TEST_CASE("ticks are memoryless")
{
    const Tree tree(parse_bt("(sequence (action a0) (action a1))"), registry());
    Ctx c;
    c.leaf = {BtStatus::Success, BtStatus::Running, BtStatus::Success};
    CHECK(tree.tick(c) == BtStatus::Running);
    CHECK(tree.tick(c) == BtStatus::Running);
    // A Running child is not resumed: the first child is re-evaluated every tick.
    CHECK(c.calls[0] == 2);
    CHECK(c.calls[1] == 2);
}

TEST_CASE("conditions map to success and failure")
{
    Ctx c;
    CHECK(Tree(parse_bt("(condition yes)"), registry()).tick(c) == BtStatus::Success);
    CHECK(Tree(parse_bt("(condition no)"), registry()).tick(c) == BtStatus::Failure);
    const Tree nested(parse_bt("(fallback (sequence (condition no) (action a0)) (action a1))"), registry());
    c.leaf = {BtStatus::Success, BtStatus::Running, BtStatus::Success};
    CHECK(nested.tick(c) == BtStatus::Running);
    CHECK(c.calls[0] == 0);
    CHECK(nested.size() == 5);
}

TEST_CASE("text format round-trips and ignores comments")
{
    const char* text = R"(
        ; top-level choice
        (fallback
          (sequence (condition yes) (action a0))  ; first
          (action a1))
    )";
    const BtSpec spec = parse_bt(text);
    CHECK(spec.kind == BtKind::Fallback);
    CHECK(spec.children.size() == 2);
    CHECK(spec.children[0].children[1].callback == "a0");
    CHECK(format_bt(spec) == "(fallback (sequence (condition yes) (action a0)) (action a1))");
    CHECK(parse_bt(format_bt(spec)) == spec);
}

TEST_CASE("malformed trees are rejected at parse or construction")
{
    CHECK_THROWS_AS(parse_bt(""), BtError);
    CHECK_THROWS_AS(parse_bt("(sequence (action a0)"), BtError);
    CHECK_THROWS_AS(parse_bt("(sequence (action a0)))"), BtError);
    CHECK_THROWS_AS(parse_bt("(parallel (action a0))"), BtError);
    CHECK_THROWS_AS(parse_bt("(action)"), BtError);
    CHECK_THROWS_AS(parse_bt("(action a0 a1)"), BtError);
    CHECK_THROWS_AS(parse_bt("(action a0) (action a1)"), BtError);
    CHECK_THROWS_WITH_AS(parse_bt("(sequence\n (action a0)\n (bogus x))"), doctest::Contains("line 3"), BtError);

    CHECK_THROWS_AS(Tree(parse_bt("(sequence)"), registry()), BtError);
    CHECK_THROWS_AS(Tree(parse_bt("(action missing)"), registry()), BtError);
    CHECK_THROWS_AS(Tree(parse_bt("(condition a0)"), registry()), BtError);
    BtSpec leaf_with_child{BtKind::Action, "a0", {BtSpec{BtKind::Action, "a1", {}}}};
    CHECK_THROWS_AS(Tree(leaf_with_child, registry()), BtError);
}

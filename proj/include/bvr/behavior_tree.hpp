#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bvr {

enum class BtStatus : std::uint8_t { Success, Failure, Running };
enum class BtKind : std::uint8_t { Sequence, Fallback, Condition, Action };

std::string_view to_string(BtStatus status);
std::string_view to_string(BtKind kind);

class BtError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Declarative tree description, independent of any callbacks.
///
/// Text form is an s-expression, one node per parenthesised list:
///
///     (fallback
///       (sequence (condition incoming_launch) (action evade))
///       (action approach))
///
/// `;` starts a comment that runs to the end of the line.
struct BtSpec {
    BtKind kind = BtKind::Action;
    std::string callback;          // leaves only
    std::vector<BtSpec> children;  // control nodes only

    friend bool operator==(const BtSpec&, const BtSpec&) = default;
};

BtSpec parse_bt(std::string_view text);

/// Single-line canonical text form; parse_bt(format_bt(s)) == s.
std::string format_bt(const BtSpec& spec);

/// Memoryless behavior tree over a caller-defined context. Conditions read the
/// context; actions may write to it. The tree is immutable after construction and
/// can be shared read-only across worlds.
template <class Context>
class BehaviorTree {
public:
    using Condition = std::function<bool(const Context&)>;
    using Action = std::function<BtStatus(Context&)>;

    struct Registry {
        std::map<std::string, Condition, std::less<>> conditions;
        std::map<std::string, Action, std::less<>> actions;
    };

    BehaviorTree(const BtSpec& spec, const Registry& registry)
    {
        root_ = build(spec, registry);
    }

    BtStatus tick(Context& ctx) const { return tick_node(root_, ctx); }

    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        BtKind kind;
        std::vector<std::size_t> children;
        std::size_t callback = 0;
    };

    std::size_t build(const BtSpec& spec, const Registry& registry)
    {
        Node node{spec.kind, {}, 0};
        switch (spec.kind) {
        case BtKind::Sequence:
        case BtKind::Fallback:
            if (spec.children.empty()) {
                throw BtError(std::string(to_string(spec.kind)) + " node needs at least one child");
            }
            if (!spec.callback.empty()) throw BtError("control node cannot name a callback");
            for (const BtSpec& child : spec.children) node.children.push_back(build(child, registry));
            break;
        case BtKind::Condition: {
            if (!spec.children.empty()) throw BtError("condition '" + spec.callback + "' cannot have children");
            auto it = registry.conditions.find(spec.callback);
            if (it == registry.conditions.end()) throw BtError("unknown condition '" + spec.callback + "'");
            node.callback = conditions_.size();
            conditions_.push_back(it->second);
            break;
        }
        case BtKind::Action: {
            if (!spec.children.empty()) throw BtError("action '" + spec.callback + "' cannot have children");
            auto it = registry.actions.find(spec.callback);
            if (it == registry.actions.end()) throw BtError("unknown action '" + spec.callback + "'");
            node.callback = actions_.size();
            actions_.push_back(it->second);
            break;
        }
        }
        nodes_.push_back(std::move(node));
        return nodes_.size() - 1;
    }

    BtStatus tick_node(std::size_t index, Context& ctx) const
    {
        const Node& node = nodes_[index];
        switch (node.kind) {
        case BtKind::Sequence:
            for (std::size_t child : node.children) {
                const BtStatus s = tick_node(child, ctx);
                if (s != BtStatus::Success) return s;
            }
            return BtStatus::Success;
        case BtKind::Fallback:
            for (std::size_t child : node.children) {
                const BtStatus s = tick_node(child, ctx);
                if (s != BtStatus::Failure) return s;
            }
            return BtStatus::Failure;
        case BtKind::Condition:
            return conditions_[node.callback](ctx) ? BtStatus::Success : BtStatus::Failure;
        case BtKind::Action:
            return actions_[node.callback](ctx);
        }
        return BtStatus::Failure;
    }

    std::vector<Node> nodes_;
    std::vector<Condition> conditions_;
    std::vector<Action> actions_;
    std::size_t root_ = 0;
};

}  // namespace bvr

#include "bvr/behavior_tree.hpp"

#include <cctype>

namespace bvr {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    BtSpec parse_document()
    {
        BtSpec root = parse_node();
        skip_space();
        if (pos_ != text_.size()) fail("trailing content after root node");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        std::size_t line = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) line += text_[i] == '\n';
        throw BtError("bt parse error at line " + std::to_string(line) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string atom()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
            ++pos_;
        }
        if (start == pos_) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c)
    {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek(char c)
    {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    BtSpec parse_node()
    {
        expect('(');
        const std::string keyword = atom();
        BtSpec spec;
        if (keyword == "sequence" || keyword == "fallback") {
            spec.kind = keyword == "sequence" ? BtKind::Sequence : BtKind::Fallback;
            while (!peek(')')) {
                if (pos_ >= text_.size()) fail("unterminated " + keyword);
                spec.children.push_back(parse_node());
            }
            if (spec.children.empty()) fail(keyword + " needs at least one child");
        } else if (keyword == "condition" || keyword == "action") {
            spec.kind = keyword == "condition" ? BtKind::Condition : BtKind::Action;
            spec.callback = atom();
        } else {
            fail("unknown node kind '" + keyword + "'");
        }
        expect(')');
        return spec;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void format_into(const BtSpec& spec, std::string& out)
{
    out += '(';
    out += to_string(spec.kind);
    if (spec.kind == BtKind::Condition || spec.kind == BtKind::Action) {
        out += ' ';
        out += spec.callback;
    }
    for (const BtSpec& child : spec.children) {
        out += ' ';
        format_into(child, out);
    }
    out += ')';
}

}  // namespace

std::string_view to_string(BtStatus status)
{
    switch (status) {
    case BtStatus::Success: return "success";
    case BtStatus::Failure: return "failure";
    case BtStatus::Running: return "running";
    }
    return "unknown";
}

std::string_view to_string(BtKind kind)
{
    switch (kind) {
    case BtKind::Sequence: return "sequence";
    case BtKind::Fallback: return "fallback";
    case BtKind::Condition: return "condition";
    case BtKind::Action: return "action";
    }
    return "unknown";
}

BtSpec parse_bt(std::string_view text) { return Parser(text).parse_document(); }

std::string format_bt(const BtSpec& spec)
{
    std::string out;
    format_into(spec, out);
    return out;
}

}  // namespace bvr

#include "coaltree/treecore/tree_io.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <utility>
#include <vector>

#include "coaltree/errors.hpp"

namespace coaltree::treecore {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    RootedTree run() {
        // Explicit stack of open "(" frames keeps deep combs off the call stack.
        struct Frame {
            std::vector<VertexId> children;
        };
        std::vector<Frame> open;
        for (;;) {
            skip_ws();
            VertexId done = kNoVertex;
            if (peek() == '(') {
                ++pos_;
                open.emplace_back();
                continue;
            }
            if (peek() == 'L') {
                ++pos_;
                done = builder_.add_leaf(parse_mark());
            } else {
                fail("expected 'L' or '('");
            }
            // Close as many frames as the input allows.
            for (;;) {
                if (open.empty()) {
                    skip_ws();
                    if (pos_ != text_.size()) fail("unexpected trailing input");
                    return std::move(builder_).build();
                }
                Frame& frame = open.back();
                frame.children.push_back(done);
                skip_ws();
                if (frame.children.size() == 1) {
                    if (peek() != ',') fail("expected ','");
                    ++pos_;
                    break;
                }
                if (peek() != ')') fail("expected ')'");
                ++pos_;
                const VertexId left = frame.children[0];
                const VertexId right = frame.children[1];
                open.pop_back();
                done = builder_.add_internal(left, right, parse_mark());
            }
        }
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::optional<double> parse_mark() {
        skip_ws();
        if (peek() != ':') return std::nullopt;
        ++pos_;
        skip_ws();
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first) fail("expected a decimal mark");
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    [[noreturn]] void fail(const char* message) const { throw ParseError(message, pos_); }

    std::string_view text_;
    std::size_t pos_ = 0;
    TreeBuilder builder_;
};

void append_mark(std::string& out, const std::optional<double>& mark) {
    if (!mark) return;
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, *mark);
    out += ':';
    out.append(buffer, ptr);
}

}  // namespace

RootedTree parse_tree(std::string_view text) { return Parser(text).run(); }

std::string serialize_tree(const RootedTree& tree) {
    if (tree.empty()) throw DomainError("the empty tree has no text form");
    std::string out;
    // (vertex, stage): stage 0 = open, 1 = between children, 2 = close.
    std::vector<std::pair<VertexId, int>> stack{{tree.root(), 0}};
    while (!stack.empty()) {
        auto& [v, stage] = stack.back();
        const Vertex& vert = tree.vertex(v);
        if (vert.is_leaf()) {
            out += 'L';
            append_mark(out, vert.mark);
            stack.pop_back();
            continue;
        }
        if (stage == 0) {
            out += '(';
            stage = 1;
            stack.emplace_back(vert.left, 0);
        } else if (stage == 1) {
            out += ',';
            stage = 2;
            stack.emplace_back(vert.right, 0);
        } else {
            out += ')';
            append_mark(out, vert.mark);
            stack.pop_back();
        }
    }
    return out;
}

}  // namespace coaltree::treecore

#include "goising/sgf.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace goising {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// 'a'..'z' -> 0..25, 'A'..'Z' -> 26..51 (letters beyond 'z' cover large boards)
int letter_index(char c) {
    if (c >= 'a' && c <= 'z') return c - 'a';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 26;
    return -1;
}

char index_letter(int i) {
    return i < 26 ? static_cast<char>('a' + i) : static_cast<char>('A' + i - 26);
}

Coord decode_point(std::string_view v, int size, std::size_t offset) {
    int col = v.size() == 2 ? letter_index(v[0]) : -1;
    int row = v.size() == 2 ? letter_index(v[1]) : -1;
    if (col < 0 || row < 0 || col >= size || row >= size)
        throw SgfError("illegal coordinate \"" + std::string(v) + "\"", offset);
    return Coord{static_cast<std::int16_t>(col), static_cast<std::int16_t>(row)};
}

void append_escaped(std::string& out, std::string_view value) {
    for (char c : value) {
        if (c == ']' || c == '\\') out += '\\';
        out += c;
    }
}

// Iterative main-line parser. Variations are handled without recursion: the
// first child at every branch is followed, and once the followed sequence
// closes, the remaining siblings are skipped with balanced, bracket-aware
// scanning so structural errors in them are still reported.
class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    GameRecord run() {
        seek_root();
        ++pos_;  // consume '('
        int depth = 1;
        bool root = true;
        while (true) {
            skip_ws();
            if (eof())
                throw SgfError("unbalanced parentheses: unexpected end of input", pos_);
            char c = text_[pos_];
            if (c == ';') {
                ++pos_;
                parse_node(root);
                root = false;
            } else if (c == '(') {
                if (root) throw SgfError("missing root node: expected ';' after '('", pos_);
                ++pos_;
                ++depth;
                skip_ws();
                if (eof() || text_[pos_] != ';')
                    throw SgfError("expected ';' to start a game tree", pos_);
            } else if (c == ')') {
                if (root) throw SgfError("missing root node: empty game tree", pos_);
                ++pos_;
                skip_siblings(depth - 1);
                return std::move(record_);
            } else {
                throw SgfError(std::string("unexpected character '") + c + "' in game tree",
                               pos_);
            }
        }
    }

  private:
    bool eof() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!eof() && is_space(text_[pos_])) ++pos_;
    }

    // Robustness convention for real-world files: scan forward to the first
    // '(' that opens a node, ignoring any leading junk (BOM, mail headers).
    void seek_root() {
        while (pos_ < text_.size()) {
            if (text_[pos_] != '(') {
                ++pos_;
                continue;
            }
            std::size_t after = pos_ + 1;
            while (after < text_.size() && is_space(text_[after])) ++after;
            if (after < text_.size() && text_[after] == ';') return;
            pos_ = after;  // only whitespace was skipped; no '(' inside it
        }
        throw SgfError("missing root: no game tree found", text_.size());
    }

    // Consumes the rest of the first game tree after the main line ended:
    // sibling variations and closing parentheses down to depth 0.
    void skip_siblings(int depth) {
        while (depth > 0) {
            skip_ws();
            if (eof())
                throw SgfError("unbalanced parentheses: unexpected end of input", pos_);
            char c = text_[pos_];
            if (c == '(') {
                ++pos_;
                ++depth;
            } else if (c == ')') {
                ++pos_;
                --depth;
            } else if (c == ';') {
                ++pos_;
                skip_node_properties();
            } else {
                throw SgfError(std::string("unexpected character '") + c + "' in game tree",
                               pos_);
            }
        }
    }

    void skip_node_properties() {
        while (true) {
            skip_ws();
            if (eof()) return;  // the enclosing loop reports the missing ')'
            char c = text_[pos_];
            if (c == ';' || c == '(' || c == ')') return;
            std::string ident = parse_ident();
            bool saw_value = false;
            while (true) {
                skip_ws();
                if (eof() || text_[pos_] != '[') break;
                scan_value();
                saw_value = true;
            }
            if (!saw_value)
                throw SgfError("expected '[' after property " + ident, pos_);
        }
    }

    void parse_node(bool root) {
        while (true) {
            skip_ws();
            if (eof()) return;
            char c = text_[pos_];
            if (c == ';' || c == '(' || c == ')') return;
            std::string ident = parse_ident();
            std::vector<std::string> values;
            std::vector<std::size_t> offsets;
            while (true) {
                skip_ws();
                if (eof() || text_[pos_] != '[') break;
                offsets.push_back(pos_ + 1);
                values.push_back(scan_value());
            }
            if (values.empty())
                throw SgfError("expected '[' after property " + ident, pos_);
            handle_property(root, ident, values, offsets);
        }
    }

    std::string parse_ident() {
        std::size_t start = pos_;
        std::string ident;
        while (!eof() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            char c = text_[pos_++];
            // FF[3] idents may carry lowercase letters; they are not significant
            if (std::isupper(static_cast<unsigned char>(c))) ident += c;
        }
        if (ident.empty())
            throw SgfError("expected property ident", start);
        return ident;
    }

    std::string scan_value() {
        std::size_t open = pos_++;  // consume '['
        std::string out;
        while (true) {
            if (eof()) throw SgfError("unterminated property value", open);
            char c = text_[pos_++];
            if (c == ']') return out;
            if (c == '\\') {
                if (eof()) throw SgfError("unterminated property value", open);
                char e = text_[pos_++];
                if (e == '\n') continue;  // soft line break
                if (e == '\r') {
                    if (!eof() && text_[pos_] == '\n') ++pos_;
                    continue;
                }
                out += e;
            } else {
                out += c;
            }
        }
    }

    std::optional<Coord> decode_move(const std::string& v, std::size_t offset) const {
        if (v.empty()) return std::nullopt;
        if (v == "tt" && record_.size <= 19) return std::nullopt;
        return decode_point(v, record_.size, offset);
    }

    // AB/AW values: a single point or an "ul:lr" rectangle (FF[4] compressed
    // point lists).
    void decode_points(const std::string& v, std::size_t offset, std::vector<Coord>* out) const {
        std::size_t colon = v.find(':');
        if (colon == std::string::npos) {
            out->push_back(decode_point(v, record_.size, offset));
            return;
        }
        Coord ul = decode_point(v.substr(0, colon), record_.size, offset);
        Coord lr = decode_point(v.substr(colon + 1), record_.size, offset + colon + 1);
        if (lr.col < ul.col || lr.row < ul.row)
            throw SgfError("illegal coordinate rectangle \"" + v + "\"", offset);
        for (std::int16_t row = ul.row; row <= lr.row; ++row)
            for (std::int16_t col = ul.col; col <= lr.col; ++col)
                out->push_back(Coord{col, row});
    }

    void handle_property(bool root, const std::string& ident,
                         const std::vector<std::string>& values,
                         const std::vector<std::size_t>& offsets) {
        const std::string& v0 = values.front();
        if (ident == "B" || ident == "W") {
            Color color = ident == "B" ? Color::Black : Color::White;
            record_.moves.push_back(Move{color, decode_move(v0, offsets.front())});
        } else if (ident == "AB" || ident == "AW") {
            auto* out = ident == "AB" ? &record_.setup_black : &record_.setup_white;
            for (std::size_t i = 0; i < values.size(); ++i)
                decode_points(values[i], offsets[i], out);
        } else if (ident == "SZ") {
            int size = 0;
            auto t = trim(v0);
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), size);
            if (ec == std::errc{} && size >= 1 && size <= 52) record_.size = size;
            (void)p;
        } else if (ident == "KM") {
            double komi = 0.0;
            auto t = trim(v0);
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), komi);
            if (ec == std::errc{}) {
                record_.komi = komi;
                record_.has_komi = true;
            } else if (root) {
                record_.extra_root_properties.push_back({ident, values});
            }
            (void)p;
        } else if (ident == "GM") {
            if (trim(v0) != "1")
                throw SgfError("not a Go record: GM[" + v0 + "]", offsets.front());
        } else if (ident == "FF") {
            // FF[3] and FF[4] both accepted; nothing version-specific to vary
        } else if (ident == "PB") {
            record_.black_player = v0;
        } else if (ident == "PW") {
            record_.white_player = v0;
        } else if (ident == "RE") {
            record_.result = parse_result(v0);
        } else if (ident == "DT") {
            record_.date = v0;
        } else if (ident == "EV") {
            record_.event = v0;
        } else if (root) {
            record_.extra_root_properties.push_back({ident, values});
        }
        // non-root unknowns (comments, clock times, ...) are dropped
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    GameRecord record_;
};

}  // namespace

SgfError::SgfError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"), offset(offset) {}

GameResult parse_result(std::string_view raw) {
    GameResult r;
    r.raw = std::string(raw);
    std::string t = lower(trim(raw));
    if (t.empty() || t == "?" || t == "void") return r;
    if (t == "0" || t == "draw" || t == "jigo") {
        r.is_draw = true;
        return r;
    }
    if (t.size() < 2 || (t[0] != 'b' && t[0] != 'w') || t[1] != '+') return r;
    r.winner = t[0] == 'b' ? Color::Black : Color::White;
    std::string_view rest = std::string_view(t).substr(2);
    if (rest.empty()) return r;
    if (rest == "r" || rest == "resign") {
        r.by_resignation = true;
        return r;
    }
    if (rest == "t" || rest == "time" || rest == "f" || rest == "forfeit") return r;
    double margin = 0.0;
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), margin);
    if (ec == std::errc{} && p == rest.data() + rest.size()) r.margin = margin;
    return r;
}

std::string format_result(const GameResult& r) {
    if (r.is_draw) return "0";
    if (!r.winner) return r.raw;
    std::string out(1, color_char(*r.winner));
    out += '+';
    if (r.by_resignation)
        out += 'R';
    else if (r.margin)
        out += format_double(*r.margin);
    return out;
}

GameRecord parse_sgf(std::string_view text) { return Parser(text).run(); }

std::string serialize_sgf(const GameRecord& g) {
    std::string out = "(;GM[1]FF[4]SZ[" + std::to_string(g.size) + "]";
    if (g.has_komi) out += "KM[" + format_double(g.komi) + "]";
    if (!g.black_player.empty()) {
        out += "PB[";
        append_escaped(out, g.black_player);
        out += ']';
    }
    if (!g.white_player.empty()) {
        out += "PW[";
        append_escaped(out, g.white_player);
        out += ']';
    }
    std::string re = g.result.raw.empty() ? format_result(g.result) : g.result.raw;
    if (!re.empty()) {
        out += "RE[";
        append_escaped(out, re);
        out += ']';
    }
    if (!g.date.empty()) {
        out += "DT[";
        append_escaped(out, g.date);
        out += ']';
    }
    if (!g.event.empty()) {
        out += "EV[";
        append_escaped(out, g.event);
        out += ']';
    }
    for (const SgfProperty& p : g.extra_root_properties) {
        out += p.ident;
        for (const std::string& v : p.values) {
            out += '[';
            append_escaped(out, v);
            out += ']';
        }
    }
    for (auto [name, coords] :
         {std::pair{"AB", &g.setup_black}, std::pair{"AW", &g.setup_white}}) {
        if (coords->empty()) continue;
        out += name;
        for (Coord c : *coords) out += '[' + encode_sgf_coord(c) + ']';
    }
    for (const Move& m : g.moves) {
        out += ';';
        out += color_char(m.color);
        out += '[';
        if (m.at) out += encode_sgf_coord(*m.at);
        out += ']';
    }
    out += ')';
    return out;
}

std::optional<Coord> decode_sgf_coord(std::string_view value, int size) {
    if (value.empty()) return std::nullopt;
    if (value == "tt" && size <= 19) return std::nullopt;
    return decode_point(value, size, 0);
}

std::string encode_sgf_coord(Coord c) {
    return std::string{index_letter(c.col), index_letter(c.row)};
}

}  // namespace goising

#include "fenhg/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace fenhg {

namespace {

struct Token {
    std::string text;
    int line;
    int column;
    bool is_id;  // identifier vs punctuation
};

bool id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '.';
}

std::vector<Token> lex_line(const std::string& line, int line_no) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            ++i;
            continue;
        }
        int column = static_cast<int>(i) + 1;
        if (id_char(c)) {
            std::size_t start = i;
            while (i < line.size() && id_char(line[i])) ++i;
            tokens.push_back({line.substr(start, i - start), line_no, column, true});
            continue;
        }
        if (std::string(":;>~{},|").find(c) != std::string::npos) {
            tokens.push_back({std::string(1, c), line_no, column, false});
            ++i;
            continue;
        }
        throw ParseError(line_no, column, std::string("unexpected character '") + c + "'");
    }
    return tokens;
}

class TokenCursor {
public:
    TokenCursor(std::vector<Token> tokens, int line_no, int end_column)
        : tokens_(std::move(tokens)), line_(line_no), end_column_(end_column) {}

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }

    const Token& expect_id(const std::string& what) {
        if (done() || !tokens_[pos_].is_id) {
            fail("expected " + what);
        }
        return tokens_[pos_++];
    }

    void expect_punct(const std::string& text) {
        if (done() || tokens_[pos_].is_id || tokens_[pos_].text != text) {
            fail("expected '" + text + "'");
        }
        ++pos_;
    }

    bool take_punct(const std::string& text) {
        if (!done() && !tokens_[pos_].is_id && tokens_[pos_].text == text) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_end() {
        if (!done()) fail("unexpected trailing input");
    }

    [[noreturn]] void fail(const std::string& message) const {
        if (done()) throw ParseError(line_, end_column_, message + " at end of line");
        throw ParseError(tokens_[pos_].line, tokens_[pos_].column,
                         message + ", got '" + tokens_[pos_].text + "'");
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_;
    int end_column_;
};

struct RawChain {
    std::vector<std::vector<Token>> tiers;  // empty for "none"
};

// chain := "none" | id (('>' | '~') id)*
RawChain parse_chain(TokenCursor& cursor) {
    RawChain chain;
    const Token& first = cursor.expect_id("a player id or 'none'");
    if (first.text == "none") return chain;
    chain.tiers.push_back({first});
    while (true) {
        if (cursor.take_punct(">")) {
            chain.tiers.push_back({cursor.expect_id("a player id")});
        } else if (cursor.take_punct("~")) {
            chain.tiers.back().push_back(cursor.expect_id("a player id"));
        } else {
            return chain;
        }
    }
}

struct RawPlayerLine {
    Token owner;
    RawChain friends;
    RawChain enemies;
};

WeakOrder resolve_chain(const RawChain& chain, const PlayerSet& declared) {
    std::vector<PlayerSet> tiers;
    PlayerSet seen;
    for (const auto& tier : chain.tiers) {
        PlayerSet members;
        for (const Token& token : tier) {
            if (declared.count(token.text) == 0) {
                throw ParseError(token.line, token.column,
                                 "unknown id '" + token.text + "' (no player line declares it)");
            }
            if (!seen.insert(token.text).second) {
                throw ParseError(token.line, token.column,
                                 "'" + token.text + "' is listed twice in one chain");
            }
            members.insert(token.text);
        }
        tiers.push_back(std::move(members));
    }
    return WeakOrder{std::move(tiers)};
}

std::string render_chain(const WeakOrder& order) {
    if (order.empty()) return "none";
    std::string out;
    bool first_tier = true;
    for (const auto& tier : order.tiers()) {
        if (!first_tier) out += " > ";
        first_tier = false;
        bool first = true;
        for (const auto& p : tier) {
            if (!first) out += " ~ ";
            first = false;
            out += p;
        }
    }
    return out;
}

}  // namespace

Game parse_game(std::istream& in) {
    Game game;
    std::vector<RawPlayerLine> lines;
    bool norm_seen = false;
    bool bound_seen = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        TokenCursor cursor(lex_line(line, line_no), line_no, static_cast<int>(line.size()) + 1);
        if (cursor.done()) continue;
        const Token& head = cursor.expect_id("'player', 'norm', or 'degree_bound'");
        if (head.text == "norm") {
            cursor.expect_punct(":");
            const Token& value = cursor.expect_id("'one' or 'two'");
            if (value.text == "one") {
                game.norm = Norm::One;
            } else if (value.text == "two") {
                game.norm = Norm::Two;
            } else {
                throw ParseError(value.line, value.column,
                                 "expected 'one' or 'two', got '" + value.text + "'");
            }
            if (norm_seen) throw ParseError(head.line, head.column, "duplicate 'norm' header");
            norm_seen = true;
            cursor.expect_end();
        } else if (head.text == "degree_bound") {
            cursor.expect_punct(":");
            const Token& value = cursor.expect_id("a positive integer");
            int bound = 0;
            for (char c : value.text) {
                if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
                    throw ParseError(value.line, value.column,
                                     "expected a positive integer, got '" + value.text + "'");
                }
                bound = bound * 10 + (c - '0');
                if (bound > 1'000'000) break;
            }
            if (bound <= 0 || bound > 1'000'000) {
                throw ParseError(value.line, value.column, "degree bound out of range");
            }
            if (bound_seen) {
                throw ParseError(head.line, head.column, "duplicate 'degree_bound' header");
            }
            bound_seen = true;
            game.degree_bound = bound;
            cursor.expect_end();
        } else if (head.text == "player") {
            RawPlayerLine raw;
            raw.owner = cursor.expect_id("a player id");
            cursor.expect_punct(":");
            const Token& fkw = cursor.expect_id("'friends'");
            if (fkw.text != "friends") {
                throw ParseError(fkw.line, fkw.column, "expected 'friends', got '" + fkw.text + "'");
            }
            raw.friends = parse_chain(cursor);
            cursor.expect_punct(";");
            const Token& ekw = cursor.expect_id("'enemies'");
            if (ekw.text != "enemies") {
                throw ParseError(ekw.line, ekw.column, "expected 'enemies', got '" + ekw.text + "'");
            }
            raw.enemies = parse_chain(cursor);
            cursor.expect_end();
            if (!game.players.insert(raw.owner.text).second) {
                throw ParseError(raw.owner.line, raw.owner.column,
                                 "duplicate player '" + raw.owner.text + "'");
            }
            lines.push_back(std::move(raw));
        } else {
            throw ParseError(head.line, head.column,
                             "expected 'player', 'norm', or 'degree_bound', got '" + head.text +
                                 "'");
        }
    }

    for (const auto& raw : lines) {
        Ballot ballot{raw.owner.text, resolve_chain(raw.friends, game.players),
                      resolve_chain(raw.enemies, game.players)};
        game.ballots.emplace(raw.owner.text, std::move(ballot));
    }
    return game;
}

Game parse_game(const std::string& text) {
    std::istringstream in(text);
    return parse_game(in);
}

std::string serialize_game(const Game& g) {
    std::string out;
    if (g.norm == Norm::Two) out += "norm: two\n";
    if (g.degree_bound) out += "degree_bound: " + std::to_string(*g.degree_bound) + "\n";
    for (const auto& p : g.players) {
        auto it = g.ballots.find(p);
        out += "player " + p + ": friends ";
        out += it == g.ballots.end() ? "none" : render_chain(it->second.friends);
        out += " ; enemies ";
        out += it == g.ballots.end() ? "none" : render_chain(it->second.enemies);
        out += "\n";
    }
    return out;
}

namespace {

// Lexes a whole document (partition or coalition text may span lines).
TokenCursor lex_text(const std::string& text) {
    std::vector<Token> tokens;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int end_column = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto line_tokens = lex_line(line, line_no);
        tokens.insert(tokens.end(), line_tokens.begin(), line_tokens.end());
        end_column = static_cast<int>(line.size()) + 1;
    }
    return TokenCursor(std::move(tokens), std::max(line_no, 1), end_column);
}

PlayerSet parse_block(TokenCursor& cursor, const Game& g, PlayerSet& taken) {
    cursor.expect_punct("{");
    PlayerSet members;
    while (true) {
        const Token& id = cursor.expect_id("a player id");
        if (g.players.count(id.text) == 0) {
            throw ParseError(id.line, id.column, "unknown id '" + id.text + "'");
        }
        if (!taken.insert(id.text).second) {
            throw ParseError(id.line, id.column, "duplicated player '" + id.text + "'");
        }
        members.insert(id.text);
        if (cursor.take_punct(",")) continue;
        cursor.expect_punct("}");
        return members;
    }
}

}  // namespace

CoalitionStructure parse_partition(const std::string& text, const Game& g) {
    TokenCursor cursor = lex_text(text);
    std::vector<Coalition> blocks;
    PlayerSet taken;
    blocks.emplace_back(parse_block(cursor, g, taken));
    while (cursor.take_punct("|")) {
        blocks.emplace_back(parse_block(cursor, g, taken));
    }
    cursor.expect_end();
    for (const auto& p : g.players) {
        if (taken.count(p) == 0) {
            throw ParseError(1, 1, "missing player '" + p + "'");
        }
    }
    return CoalitionStructure{std::move(blocks)};
}

std::string serialize_partition(const CoalitionStructure& gamma) {
    std::string out;
    bool first = true;
    for (const auto& block : gamma.blocks()) {
        if (!first) out += " | ";
        first = false;
        out += serialize_coalition(block);
    }
    return out;
}

Coalition parse_coalition(const std::string& text, const Game& g) {
    TokenCursor cursor = lex_text(text);
    PlayerSet taken;
    PlayerSet members = parse_block(cursor, g, taken);
    cursor.expect_end();
    return Coalition{std::move(members)};
}

std::string serialize_coalition(const Coalition& c) {
    std::string out = "{";
    bool first = true;
    for (const auto& p : c.members()) {
        if (!first) out += ",";
        first = false;
        out += p;
    }
    return out + "}";
}

}  // namespace fenhg

#include "popmatch/io.hpp"

#include <fstream>
#include <sstream>

namespace popmatch {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

// Splits one line into whitespace-separated tokens; `#` starts a comment.
std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#') {
            ++i;
        }
        tokens.push_back({std::string(line.substr(start, i - start)),
                          static_cast<int>(start) + 1});
    }
    return tokens;
}

int parse_positive_int(const Token& tok, int line_no) {
    try {
        std::size_t used = 0;
        const int value = std::stoi(tok.text, &used);
        if (used != tok.text.size() || value < 1) throw std::invalid_argument("");
        return value;
    } catch (const std::exception&) {
        throw ParseError("expected a positive integer, got '" + tok.text + "'", line_no,
                         tok.column);
    }
}

}  // namespace

InstanceData parse_instance_data(std::string_view text) {
    InstanceData data;
    std::unordered_map<std::string, int> students, courses;
    bool have_students = false, have_courses = false;
    std::vector<char> cap_seen_s, cap_seen_c, pref_seen_s, pref_seen_c;

    // Directives referencing vertices (cap:, pref:) are collected first and
    // resolved after both declaration lines have been seen, so section order
    // does not matter.
    struct Pending {
        bool is_cap;
        int line_no;
        std::vector<Token> args;
    };
    std::vector<Pending> pending;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const Token& head = tokens.front();
        std::vector<Token> args(tokens.begin() + 1, tokens.end());

        if (head.text == "students:") {
            if (have_students) throw ParseError("duplicate 'students:' line", line_no, head.column);
            have_students = true;
            for (const Token& t : args) {
                if (!students.emplace(t.text, static_cast<int>(data.students.size())).second) {
                    throw ParseError("duplicate student name '" + t.text + "'", line_no, t.column);
                }
                data.students.push_back(t.text);
            }
        } else if (head.text == "courses:") {
            if (have_courses) throw ParseError("duplicate 'courses:' line", line_no, head.column);
            have_courses = true;
            for (const Token& t : args) {
                if (!courses.emplace(t.text, static_cast<int>(data.courses.size())).second) {
                    throw ParseError("duplicate course name '" + t.text + "'", line_no, t.column);
                }
                data.courses.push_back(t.text);
            }
        } else if (head.text == "cap:" || head.text == "pref:") {
            if (args.empty()) {
                throw ParseError("'" + head.text + "' needs a vertex name", line_no, head.column);
            }
            pending.push_back({head.text == "cap:", line_no, std::move(args)});
        } else {
            throw ParseError("unknown directive '" + head.text + "'", line_no, head.column);
        }
    }
    if (!have_students) throw ParseError("missing 'students:' line", line_no, 1);
    if (!have_courses) throw ParseError("missing 'courses:' line", line_no, 1);

    data.student_caps.assign(data.students.size(), 1);
    data.course_caps.assign(data.courses.size(), 1);
    data.student_prefs.resize(data.students.size());
    data.course_prefs.resize(data.courses.size());
    cap_seen_s.assign(data.students.size(), 0);
    cap_seen_c.assign(data.courses.size(), 0);
    pref_seen_s.assign(data.students.size(), 0);
    pref_seen_c.assign(data.courses.size(), 0);

    for (const Pending& p : pending) {
        const Token& name = p.args.front();
        const auto s_it = students.find(name.text);
        const auto c_it = courses.find(name.text);
        const bool is_student = s_it != students.end();
        if (!is_student && c_it == courses.end()) {
            throw ParseError("unknown vertex name '" + name.text + "'", p.line_no, name.column);
        }
        if (p.is_cap) {
            if (p.args.size() != 2) {
                throw ParseError("'cap:' takes exactly one value", p.line_no, name.column);
            }
            const int value = parse_positive_int(p.args[1], p.line_no);
            auto& seen = is_student ? cap_seen_s : cap_seen_c;
            const int idx = is_student ? s_it->second : c_it->second;
            if (seen[idx]) {
                throw ParseError("duplicate 'cap:' for '" + name.text + "'", p.line_no,
                                 name.column);
            }
            seen[idx] = 1;
            (is_student ? data.student_caps : data.course_caps)[idx] = value;
        } else {
            auto& other = is_student ? courses : students;
            auto& seen = is_student ? pref_seen_s : pref_seen_c;
            const int idx = is_student ? s_it->second : c_it->second;
            if (seen[idx]) {
                throw ParseError("duplicate 'pref:' for '" + name.text + "'", p.line_no,
                                 name.column);
            }
            seen[idx] = 1;
            auto& prefs = (is_student ? data.student_prefs : data.course_prefs)[idx];
            for (std::size_t i = 1; i < p.args.size(); ++i) {
                const auto it = other.find(p.args[i].text);
                if (it == other.end()) {
                    throw ParseError("unknown vertex name '" + p.args[i].text + "'", p.line_no,
                                     p.args[i].column);
                }
                prefs.push_back(it->second);
            }
        }
    }
    return data;
}

Instance parse_instance(std::string_view text) {
    return Instance::create(parse_instance_data(text));
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
    const InstanceData& d = inst.data();
    std::ostringstream out;
    out << "students:";
    for (const auto& s : d.students) out << ' ' << s;
    out << "\ncourses:";
    for (const auto& c : d.courses) out << ' ' << c;
    out << '\n';
    for (std::size_t a = 0; a < d.students.size(); ++a) {
        if (d.student_caps[a] != 1) out << "cap: " << d.students[a] << ' ' << d.student_caps[a] << '\n';
    }
    for (std::size_t b = 0; b < d.courses.size(); ++b) {
        if (d.course_caps[b] != 1) out << "cap: " << d.courses[b] << ' ' << d.course_caps[b] << '\n';
    }
    for (std::size_t a = 0; a < d.students.size(); ++a) {
        if (d.student_prefs[a].empty()) continue;
        out << "pref: " << d.students[a];
        for (int b : d.student_prefs[a]) out << ' ' << d.courses[b];
        out << '\n';
    }
    for (std::size_t b = 0; b < d.courses.size(); ++b) {
        if (d.course_prefs[b].empty()) continue;
        out << "pref: " << d.courses[b];
        for (int a : d.course_prefs[b]) out << ' ' << d.students[a];
        out << '\n';
    }
    return out.str();
}

Matching parse_matching(const Instance& inst, std::string_view text) {
    std::vector<std::pair<int, int>> pairs;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2) {
            throw ParseError("expected '<student> <course>'", line_no, tokens.front().column);
        }
        const int a = inst.find_student(tokens[0].text);
        if (a < 0) {
            throw ParseError("unknown student '" + tokens[0].text + "'", line_no,
                             tokens[0].column);
        }
        const int b = inst.find_course(tokens[1].text);
        if (b < 0) {
            throw ParseError("unknown course '" + tokens[1].text + "'", line_no,
                             tokens[1].column);
        }
        pairs.emplace_back(a, b);
    }
    return Matching::create(inst, std::move(pairs));
}

Matching load_matching_file(const Instance& inst, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matching file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matching(inst, buf.str());
}

std::string serialize_matching(const Instance& inst, const Matching& m) {
    std::ostringstream out;
    for (auto [a, b] : m.pairs()) {
        out << inst.data().students[a] << ' ' << inst.data().courses[b] << '\n';
    }
    return out.str();
}

}  // namespace popmatch

#include "fate/pep.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace fate {

namespace {

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  return s;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

struct NodeLine {
  long id;
  std::string name;
  bool marked;
};

// <id>"<name>" with optional attribute suffix
NodeLine parse_node_line(const std::string& line, int lineno, bool allow_mark,
                         std::vector<std::string>* warnings) {
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
    ++i;
  if (i == 0) throw SyntaxError(lineno, "expected numeric id");
  long id = std::stol(line.substr(0, i));
  if (id <= 0) throw SyntaxError(lineno, "ids must be positive");
  if (i >= line.size() || line[i] != '"')
    throw SyntaxError(lineno, "expected quoted name after id");
  std::size_t close = line.find('"', i + 1);
  if (close == std::string::npos)
    throw SyntaxError(lineno, "unterminated name");
  NodeLine out{id, line.substr(i + 1, close - i - 1), false};
  if (out.name.empty()) throw SyntaxError(lineno, "empty name");

  std::size_t j = close + 1;
  while (j < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
      continue;
    }
    if (allow_mark && line.compare(j, 2, "M1") == 0) {
      out.marked = true;
      j += 2;
    } else if (allow_mark && line.compare(j, 2, "M0") == 0) {
      out.marked = false;
      j += 2;
    } else {
      std::size_t k = j;
      while (k < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[k])))
        ++k;
      if (warnings)
        warnings->push_back("line " + std::to_string(lineno) +
                            ": ignoring attribute '" + line.substr(j, k - j) +
                            "'");
      j = k;
    }
  }
  return out;
}

std::pair<long, long> parse_arc_line(const std::string& line, int lineno,
                                     char sep) {
  std::size_t pos = line.find(sep);
  if (pos == std::string::npos || pos == 0 || pos + 1 >= line.size())
    throw SyntaxError(lineno, std::string("expected '") + sep + "' arc");
  try {
    std::size_t used = 0;
    long a = std::stol(line.substr(0, pos), &used);
    if (used != pos) throw SyntaxError(lineno, "malformed arc source");
    long b = std::stol(line.substr(pos + 1), &used);
    if (pos + 1 + used != line.size())
      throw SyntaxError(lineno, "malformed arc target");
    return {a, b};
  } catch (const std::invalid_argument&) {
    throw SyntaxError(lineno, "malformed arc");
  }
}

}  // namespace

PetriNet parse_pep(const std::string& text,
                   std::vector<std::string>* warnings) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++lineno;
      out = rtrim(line);
      if (!is_blank(out)) return true;
    }
    return false;
  };

  const char* header[3] = {"PEP", "PetriBox", "FORMAT_N2"};
  for (const char* expected : header) {
    std::string got;
    if (!next_line(got) || got != expected)
      throw SyntaxError(lineno ? lineno : 1,
                        std::string("expected header line '") + expected + "'");
  }

  enum class Section { None, PL, TR, TP, PT };
  Section section = Section::None;
  bool seen_pl = false, seen_tr = false;

  std::vector<Place> places;
  std::vector<std::pair<std::string, bool>> place_marks;
  std::map<long, PlaceId> place_of_id;
  struct RawTransition {
    std::string name;
    std::vector<PlaceId> pre, post;
  };
  std::vector<RawTransition> transitions;
  std::map<long, TransitionId> transition_of_id;

  std::string cur;
  while (next_line(cur)) {
    if (cur == "PL") {
      if (seen_pl) throw SyntaxError(lineno, "duplicate PL section");
      seen_pl = true;
      section = Section::PL;
      continue;
    }
    if (cur == "TR") {
      if (!seen_pl) throw SyntaxError(lineno, "TR section before PL");
      if (seen_tr) throw SyntaxError(lineno, "duplicate TR section");
      seen_tr = true;
      section = Section::TR;
      continue;
    }
    if (cur == "TP" || cur == "PT") {
      if (!seen_tr) throw SyntaxError(lineno, cur + " section before TR");
      section = cur == "TP" ? Section::TP : Section::PT;
      continue;
    }
    switch (section) {
      case Section::None:
        throw SyntaxError(lineno, "content before PL section");
      case Section::PL: {
        NodeLine n = parse_node_line(cur, lineno, true, warnings);
        if (place_of_id.count(n.id))
          throw SyntaxError(lineno, "duplicate place id " +
                                        std::to_string(n.id));
        place_of_id[n.id] = static_cast<PlaceId>(places.size());
        places.push_back({n.name});
        place_marks.emplace_back(n.name, n.marked);
        break;
      }
      case Section::TR: {
        NodeLine n = parse_node_line(cur, lineno, false, warnings);
        if (transition_of_id.count(n.id))
          throw SyntaxError(lineno, "duplicate transition id " +
                                        std::to_string(n.id));
        transition_of_id[n.id] =
            static_cast<TransitionId>(transitions.size());
        transitions.push_back({n.name, {}, {}});
        break;
      }
      case Section::TP: {
        auto [tid, pid] = parse_arc_line(cur, lineno, '>');
        auto t = transition_of_id.find(tid);
        auto p = place_of_id.find(pid);
        if (t == transition_of_id.end() || p == place_of_id.end())
          throw DanglingArc("line " + std::to_string(lineno) +
                            ": arc refers to undeclared node");
        transitions[t->second].post.push_back(p->second);
        break;
      }
      case Section::PT: {
        auto [pid, tid] = parse_arc_line(cur, lineno, '<');
        auto p = place_of_id.find(pid);
        auto t = transition_of_id.find(tid);
        if (t == transition_of_id.end() || p == place_of_id.end())
          throw DanglingArc("line " + std::to_string(lineno) +
                            ": arc refers to undeclared node");
        transitions[t->second].pre.push_back(p->second);
        break;
      }
    }
  }
  if (!seen_pl || !seen_tr)
    throw SyntaxError(lineno, "missing PL or TR section");

  std::vector<PlaceId> initial;
  for (PlaceId p = 0; p < static_cast<PlaceId>(places.size()); ++p)
    if (place_marks[p].second) initial.push_back(p);

  std::vector<Transition> ts;
  ts.reserve(transitions.size());
  for (auto& t : transitions)
    ts.push_back({std::move(t.name), std::move(t.pre), std::move(t.post)});
  return PetriNet(std::move(places), std::move(ts), Marking(initial));
}

std::string print_pep(const PetriNet& net) {
  std::ostringstream out;
  out << "PEP\nPetriBox\nFORMAT_N2\nPL\n";
  for (PlaceId p = 0; p < static_cast<PlaceId>(net.places().size()); ++p) {
    out << (p + 1) << '"' << net.place_name(p) << '"';
    if (net.initial().contains(p)) out << "M1";
    out << '\n';
  }
  out << "TR\n";
  for (TransitionId t = 0;
       t < static_cast<TransitionId>(net.transitions().size()); ++t)
    out << (t + 1) << '"' << net.transition_name(t) << "\"\n";
  out << "TP\n";
  for (TransitionId t = 0;
       t < static_cast<TransitionId>(net.transitions().size()); ++t)
    for (PlaceId p : net.transitions()[t].post)
      out << (t + 1) << '>' << (p + 1) << '\n';
  out << "PT\n";
  for (PlaceId p = 0; p < static_cast<PlaceId>(net.places().size()); ++p)
    for (TransitionId t = 0;
         t < static_cast<TransitionId>(net.transitions().size()); ++t) {
      const auto& pre = net.transitions()[t].pre;
      if (std::binary_search(pre.begin(), pre.end(), p))
        out << (p + 1) << '<' << (t + 1) << '\n';
    }
  return out.str();
}

std::vector<Marking> parse_bad(const std::string& text, const PetriNet& net) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<Marking> result;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::vector<PlaceId> marked;
    std::string token;
    auto flush = [&]() {
      if (token.empty()) return;
      auto p = net.place_by_name(token);
      if (!p)
        throw UnknownPlaceName("line " + std::to_string(lineno) +
                               ": unknown place '" + token + "'");
      marked.push_back(*p);
      token.clear();
    };
    for (char c : line) {
      if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
        flush();
      else
        token += c;
    }
    flush();
    if (!marked.empty()) result.push_back(Marking(std::move(marked)));
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

}  // namespace fate

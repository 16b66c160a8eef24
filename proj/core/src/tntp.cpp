#include "evplace/tntp.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace evplace {
namespace {

// Strips a trailing "~ ..." comment and surrounding whitespace.
std::string clean_line(std::string s) {
  auto tilde = s.find('~');
  if (tilde != std::string::npos) s.erase(tilde);
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  lines.push_back(cur);
  return lines;
}

double parse_number(const std::string& tok, int line, const char* what) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    std::ostringstream os;
    os << "expected a number for " << what << ", got '" << tok << "'";
    throw ParseError(line, os.str());
  }
  return v;
}

int32_t parse_int(const std::string& tok, int line, const char* what) {
  double v = parse_number(tok, line, what);
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9) {
    std::ostringstream os;
    os << what << " must be an integer, got '" << tok << "'";
    throw ParseError(line, os.str());
  }
  return static_cast<int32_t>(r);
}

// Returns true and fills `value` when the line is an <ATTR> value row.
bool match_metadata(const std::string& line, std::string& key, std::string& value) {
  if (line.empty() || line[0] != '<') return false;
  auto close = line.find('>');
  if (close == std::string::npos) return false;
  key = line.substr(1, close - 1);
  value = clean_line(line.substr(close + 1));
  return true;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

}  // namespace

PhysicalNetwork parse_tntp_net(const std::string& text) {
  PhysicalNetwork net;
  int64_t declared_links = -1;
  bool in_body = false;
  auto lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    int ln = static_cast<int>(i) + 1;
    std::string line = clean_line(lines[i]);
    if (line.empty()) continue;
    std::string key, value;
    if (!in_body && match_metadata(line, key, value)) {
      if (key == "NUMBER OF ZONES")
        net.num_zones = parse_int(value, ln, "zone count");
      else if (key == "NUMBER OF NODES")
        net.num_nodes = parse_int(value, ln, "node count");
      else if (key == "FIRST THRU NODE")
        net.first_thru_node = parse_int(value, ln, "first thru node");
      else if (key == "NUMBER OF LINKS")
        declared_links = parse_int(value, ln, "link count");
      else if (key == "END OF METADATA")
        in_body = true;
      // unrecognized metadata keys are carried by some published files; skip
      continue;
    }
    if (!in_body)
      throw ParseError(ln, "link row before <END OF METADATA>");
    auto toks = tokenize(line);
    if (!toks.empty() && toks.back() == ";") toks.pop_back();
    if (!toks.empty() && toks.back().size() > 1 && toks.back().back() == ';')
      toks.back().pop_back();
    if (toks.empty()) continue;
    if (toks.size() < 7) {
      std::ostringstream os;
      os << "link row needs at least 7 columns, got " << toks.size();
      throw ParseError(ln, os.str());
    }
    Link l;
    l.tail = parse_int(toks[0], ln, "init node");
    l.head = parse_int(toks[1], ln, "term node");
    l.capacity = parse_number(toks[2], ln, "capacity");
    l.length = parse_number(toks[3], ln, "length");
    l.t0 = parse_number(toks[4], ln, "free flow time");
    l.alpha = parse_number(toks[5], ln, "b");
    l.beta = parse_number(toks[6], ln, "power");
    // columns 8..10 (speed, toll, link_type) are accepted and ignored
    for (size_t k = 7; k < toks.size(); ++k)
      parse_number(toks[k], ln, "trailing column");
    if (l.tail < 1 || l.tail > net.num_nodes || l.head < 1 || l.head > net.num_nodes)
      throw ParseError(ln, "node id out of declared range");
    net.links.push_back(l);
  }
  if (!in_body) throw ParseError(0, "missing <END OF METADATA>");
  if (declared_links >= 0 && declared_links != static_cast<int64_t>(net.links.size())) {
    std::ostringstream os;
    os << "declared " << declared_links << " links but parsed " << net.links.size();
    throw ParseError(0, os.str());
  }
  net.validate();
  return net;
}

std::string serialize_tntp_net(const PhysicalNetwork& net) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "<NUMBER OF ZONES> " << net.num_zones << "\n";
  os << "<NUMBER OF NODES> " << net.num_nodes << "\n";
  os << "<FIRST THRU NODE> " << net.first_thru_node << "\n";
  os << "<NUMBER OF LINKS> " << net.links.size() << "\n";
  os << "<END OF METADATA>\n";
  os << "~ init term capacity length fftime b power speed toll type ;\n";
  for (const Link& l : net.links) {
    os << l.tail << " " << l.head << " " << l.capacity << " " << l.length << " "
       << l.t0 << " " << l.alpha << " " << l.beta << " 0 0 1 ;\n";
  }
  return os.str();
}

DemandTable parse_tntp_trips(const std::string& text) {
  DemandTable table;
  int32_t declared_zones = 0;
  bool in_body = false;
  int32_t origin = 0;
  auto lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    int ln = static_cast<int>(i) + 1;
    std::string line = clean_line(lines[i]);
    if (line.empty()) continue;
    std::string key, value;
    if (match_metadata(line, key, value)) {
      if (key == "NUMBER OF ZONES")
        declared_zones = parse_int(value, ln, "zone count");
      else if (key == "END OF METADATA")
        in_body = true;
      continue;
    }
    if (!in_body) throw ParseError(ln, "trip row before <END OF METADATA>");
    auto toks = tokenize(line);
    if (!toks.empty() && (toks[0] == "Origin" || toks[0] == "ORIGIN" || toks[0] == "origin")) {
      if (toks.size() != 2) throw ParseError(ln, "Origin header needs one zone id");
      origin = parse_int(toks[1], ln, "origin zone");
      if (declared_zones > 0 && (origin < 1 || origin > declared_zones))
        throw ParseError(ln, "origin not declared a zone");
      continue;
    }
    if (origin == 0) throw ParseError(ln, "trip entry before any Origin header");
    // Entries look like "dest : volume ;" possibly several per line. Pad the
    // separators so "3:100;" and "3 : 100 ;" tokenize the same way.
    std::string buf;
    for (char c : line) {
      if (c == ':' || c == ';') {
        buf.push_back(' ');
        buf.push_back(c);
        buf.push_back(' ');
      } else {
        buf.push_back(c);
      }
    }
    std::istringstream is(buf);
    std::string dtok, colon, vtok;
    while (is >> dtok) {
      if (dtok == ";") continue;
      if (!(is >> colon) || colon != ":" || !(is >> vtok))
        throw ParseError(ln, "malformed trip entry, expected 'dest : volume;'");
      int32_t dest = parse_int(dtok, ln, "destination zone");
      double vol = parse_number(vtok, ln, "trip volume");
      if (declared_zones > 0 && (dest < 1 || dest > declared_zones))
        throw ParseError(ln, "destination not declared a zone");
      if (vol < 0.0) throw ParseError(ln, "negative trip volume");
      // intra-zonal volume never touches the network, so it is dropped here
      // rather than polluting the demand table with self-pairs
      if (vol > 0.0 && dest != origin) {
        double prev = table.at(origin, dest);
        table.set(origin, dest, prev + vol);
      }
    }
  }
  if (!in_body) throw ParseError(0, "missing <END OF METADATA>");
  return table;
}

std::vector<Candidate> parse_candidates_csv(const std::string& text) {
  auto lines = split_lines(text);
  std::vector<Candidate> out;
  bool header_seen = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    int ln = static_cast<int>(i) + 1;
    std::string line = clean_line(lines[i]);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(clean_line(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    cells.push_back(clean_line(cur));
    if (!header_seen) {
      if (cells.size() != 2 || cells[0] != "node_id" || cells[1] != "cost")
        throw ParseError(ln, "expected header 'node_id,cost'");
      header_seen = true;
      continue;
    }
    if (cells.size() != 2) throw ParseError(ln, "expected two columns");
    Candidate c;
    c.node = parse_int(cells[0], ln, "node_id");
    c.cost = parse_number(cells[1], ln, "cost");
    if (c.cost < 0.0) throw ParseError(ln, "negative candidate cost");
    out.push_back(c);
  }
  if (!header_seen) throw ParseError(0, "empty candidate file");
  return out;
}

void apply_config_text(const std::string& text, InstanceConfig& cfg) {
  auto lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    int ln = static_cast<int>(i) + 1;
    std::string line = lines[i];
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = clean_line(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(ln, "expected key = value");
    std::string key = clean_line(line.substr(0, eq));
    std::string val = clean_line(line.substr(eq + 1));
    if (key.empty() || val.empty()) throw ParseError(ln, "expected key = value");
    double num = parse_number(val, ln, key.c_str());
    if (key == "budget") cfg.budget = num;
    else if (key == "charge_price") cfg.charge_price = num;
    else if (key == "charge_value") cfg.charge_value = num;
    else if (key == "unmet_weight") cfg.unmet_weight = num;
    else if (key == "battery_capacity") cfg.battery_capacity = num;
    else if (key == "battery_quantum") cfg.battery_quantum = num;
    else if (key == "charge_rate") cfg.charge_rate = num;
    else if (key == "epsilon") cfg.epsilon = num;
    else if (key == "big_m") cfg.big_m = num;
    else if (key == "time_limit") cfg.time_limit = num;
    else if (key == "fw_tolerance") cfg.fw_tolerance = num;
    else if (key == "fw_max_iters") cfg.fw_max_iters = static_cast<int>(num);
    else if (key == "cg_max_rounds") cfg.cg_max_rounds = static_cast<int>(num);
    else if (key == "vf_kappa") cfg.vf_kappa = num;
    else if (key == "oracle_max_candidates") cfg.oracle_max_candidates = static_cast<int>(num);
    else throw ParseError(ln, "unknown config key '" + key + "'");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Instance load_instance(const std::string& net_path, const std::string& trips_path,
                       const std::string& candidates_path, const std::string& config_path) {
  Instance inst;
  inst.net = parse_tntp_net(read_text_file(net_path));
  inst.demand = parse_tntp_trips(read_text_file(trips_path));
  inst.candidates = parse_candidates_csv(read_text_file(candidates_path));
  if (!config_path.empty()) apply_config_text(read_text_file(config_path), inst.cfg);
  inst.validate();
  return inst;
}

}  // namespace evplace

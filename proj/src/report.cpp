#include "nambu/report.hpp"

#include <cstdio>
#include <sstream>

namespace nambu {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::probabilistic_pass: return "probabilistic-pass";
    case CheckStatus::indeterminate: return "indeterminate";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

namespace {
int severity(CheckStatus s) {
  switch (s) {
    case CheckStatus::fail: return 4;
    case CheckStatus::indeterminate: return 3;
    case CheckStatus::probabilistic_pass: return 2;
    case CheckStatus::pass: return 1;
    case CheckStatus::skipped: return 0;
  }
  return 0;
}
}  // namespace

CheckStatus combine(CheckStatus a, CheckStatus b) {
  return severity(a) >= severity(b) ? a : b;
}

void VerificationReport::add(CheckItem item) {
  status = combine(status, item.status);
  items.push_back(std::move(item));
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.name << ": " << status_name(r.status);
  if (r.elapsed_ms > 0) os << "  (" << r.elapsed_ms << " ms)";
  if (r.seed) os << "  [seed " << *r.seed << ", samples " << r.samples << "]";
  os << "\n";
  if (!r.note.empty()) os << "  note: " << r.note << "\n";
  for (const auto& it : r.items) {
    os << "  " << it.name << ": " << status_name(it.status);
    if (!it.note.empty()) os << "  -- " << it.note;
    os << "\n";
    for (const auto& w : it.witnesses)
      os << "    at " << w.where << ": " << w.residual << "\n";
  }
  return os.str();
}

namespace {
std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}
}  // namespace

std::string render_json(const VerificationReport& r) {
  std::ostringstream os;
  os << "{\"name\":\"" << json_escape(r.name) << "\",\"status\":\""
     << status_name(r.status) << "\",\"note\":\"" << json_escape(r.note) << "\"";
  if (r.seed) os << ",\"seed\":" << *r.seed;
  os << ",\"samples\":" << r.samples << ",\"items\":[";
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    const CheckItem& it = r.items[i];
    if (i) os << ",";
    os << "{\"name\":\"" << json_escape(it.name) << "\",\"status\":\""
       << status_name(it.status) << "\",\"note\":\"" << json_escape(it.note)
       << "\",\"witnesses\":[";
    for (std::size_t j = 0; j < it.witnesses.size(); ++j) {
      if (j) os << ",";
      os << "{\"where\":\"" << json_escape(it.witnesses[j].where)
         << "\",\"residual\":\"" << json_escape(it.witnesses[j].residual)
         << "\"}";
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

}  // namespace nambu

#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "limitlab/error.hpp"

namespace limitlab::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

void dump_rec(const ordered_json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + ordered_json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalar = true;
      for (const auto& e : j)
        if (e.is_structured()) scalar = false;
      if (scalar) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_rec(j[i], out, indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const ordered_json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

ordered_json Metadata::to_json() const {
  ordered_json m;
  m["tool"] = "limitlab";
  m["version"] = version;
  m["config_hash"] = config_hash;
  m["subcommand"] = subcommand;
  m["seed"] = seed;
  m["truncation"] = truncation;
  if (!notes.empty()) m["notes"] = notes;
  return m;
}

std::vector<std::string> Metadata::header_lines() const {
  std::vector<std::string> lines{"# tool=limitlab version=" + version, "# config_hash=" + config_hash,
                                 "# subcommand=" + subcommand, "# seed=" + std::to_string(seed)};
  for (auto it = truncation.begin(); it != truncation.end(); ++it) {
    std::string value;
    dump_rec(it.value(), value, 0);
    std::replace(value.begin(), value.end(), '\n', ' ');
    lines.push_back("# truncation." + it.key() + "=" + value);
  }
  for (const auto& n : notes) lines.push_back("# note=" + n);
  return lines;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const Metadata& meta, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), columns_(columns.size()) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& line : meta.header_lines()) out_ << line << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    row_.push_back(s);
  } else {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    row_.push_back(q + "\"");
  }
  return *this;
}

CsvWriter& CsvWriter::cell(double v) {
  row_.push_back(format_double(v));
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  row_.push_back(std::to_string(v));
  return *this;
}

void CsvWriter::end_row() {
  if (row_.size() != columns_) throw Error("CsvWriter: row has " + std::to_string(row_.size()) + " cells, expected " + std::to_string(columns_));
  for (std::size_t i = 0; i < row_.size(); ++i) out_ << (i ? "," : "") << row_[i];
  out_ << '\n';
  row_.clear();
}

void write_json(const std::filesystem::path& path, const Metadata& meta, ordered_json body) {
  ordered_json doc;
  doc["metadata"] = meta.to_json();
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << dump_json(doc);
}

void write_pgm(const std::filesystem::path& path, const Metadata& meta, int width, int height,
               const std::vector<std::uint8_t>& pixels) {
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error("write_pgm: pixel buffer does not match the raster size");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "P5\n";
  for (const auto& line : meta.header_lines()) out << line << '\n';
  out << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace limitlab::cli

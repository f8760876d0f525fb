#include "csv.hpp"

#include <stdexcept>

#include "config.hpp"

namespace hawkesnet::cli {

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  return out + "\"";
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& fingerprint,
                     const std::vector<std::string>& comments)
    : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  out_ << "# fingerprint=" << fingerprint << "\r\n";
  for (const auto& c : comments) out_ << "# " << c << "\r\n";
}

void CsvWriter::cell(const std::string& text, bool first) {
  if (!first) out_ << ',';
  out_ << csv_escape(text);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t k = 0; k < columns.size(); ++k) cell(columns[k], k == 0);
  out_ << "\r\n";
}

void CsvWriter::row(std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) cell(format_number(values[k]), k == 0);
  out_ << "\r\n";
}

void CsvWriter::row(const std::string& label, std::span<const double> values) {
  cell(label, true);
  for (double v : values) cell(format_number(v), false);
  out_ << "\r\n";
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("failed writing " + path_.string());
}

}  // namespace hawkesnet::cli

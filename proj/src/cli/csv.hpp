#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace hawkesnet::cli {

// RFC-4180 writer. Every file starts with `# fingerprint=<hex>` and numbers
// are written with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& fingerprint,
            const std::vector<std::string>& comments = {});

  void header(const std::vector<std::string>& columns);
  void row(std::span<const double> values);
  // Leading text cell followed by numbers.
  void row(const std::string& label, std::span<const double> values);
  void close();

 private:
  void cell(const std::string& text, bool first);

  std::filesystem::path path_;
  std::ofstream out_;
};

std::string csv_escape(const std::string& text);

}  // namespace hawkesnet::cli

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fastball {

enum class errc {
  invalid_index,
  duplicate_edge,
  invalid_entry,
  too_large,
  unsorted_input,
  victory_vector_mismatch,
  too_few_top_nodes,
  invalid_parameter,
  degree_mismatch,
  parse_error,
  io_error,
};

std::string_view to_string(errc code) noexcept;

// Single exception type for the library; the code identifies the failure.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Parse failures carry the 1-based line number of the offending input line.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error(errc::parse_error, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fastball

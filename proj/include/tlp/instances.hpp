#pragma once

// Instance files and random instances.
//
// Canonical format (LF line endings, ASCII digits):
//
//   n m C
//   <sorted tool ids of job 1>
//   ...
//   <sorted tool ids of job n>      (an empty line for a job with no tools)
//
// Incidence format: a header of three integers, either `m n C` or `n m C`,
// followed by an m x n 0/1 matrix whose entry (t, i) is 1 iff job i needs
// tool t.  The header order is detected from the matrix shape.
//
// Random instances come from std::mt19937_64 seeded with the config seed.
// Bounded integers use rejection sampling on the raw 64-bit output and tool
// subsets use Floyd's algorithm, so a seed produces the same instance on every
// platform.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tlp/core.hpp"

namespace tlp {

namespace detail {

struct Token {
  std::int64_t value = 0;
  int line = 0;  // 0-based line index
};

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  // Trailing newline produces one empty tail entry.
  if (!lines.empty() && lines.back().empty() && !text.empty() && text.back() == '\n') {
    lines.pop_back();
  }
  return lines;
}

inline std::vector<std::int64_t> parse_ints(std::string_view line, int line_no,
                                            ErrorKind kind) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
    if (ec != std::errc{} || ptr != line.data() + j) {
      throw Error(kind,
                  "bad integer '" + std::string(line.substr(i, j - i)) +
                      "' on line " + std::to_string(line_no + 1),
                  line_no + 1);
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

inline std::vector<Token> tokenize(std::string_view text, ErrorKind kind) {
  std::vector<Token> tokens;
  const auto lines = split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    for (std::int64_t v : parse_ints(lines[k], static_cast<int>(k), kind)) {
      tokens.push_back({v, static_cast<int>(k)});
    }
  }
  return tokens;
}

struct IncidenceReading {
  std::int64_t tools = 0;
  std::int64_t jobs = 0;
};

inline RawInstance incidence_to_raw(const std::vector<Token>& body,
                                    IncidenceReading r, int capacity) {
  RawInstance raw;
  raw.capacity = capacity;
  raw.tool_sets.resize(static_cast<std::size_t>(r.jobs));
  for (std::int64_t t = 0; t < r.tools; ++t) {
    for (std::int64_t i = 0; i < r.jobs; ++i) {
      if (body[static_cast<std::size_t>(t * r.jobs + i)].value == 1) {
        raw.tool_sets[static_cast<std::size_t>(i)].push_back(t + 1);
      }
    }
  }
  return raw;
}

inline bool reading_plausible(const std::vector<Token>& body, IncidenceReading r,
                              std::int64_t capacity) {
  for (std::int64_t i = 0; i < r.jobs; ++i) {
    std::int64_t used = 0;
    for (std::int64_t t = 0; t < r.tools; ++t) {
      used += body[static_cast<std::size_t>(t * r.jobs + i)].value;
    }
    if (used > capacity) return false;
  }
  return true;
}

inline bool rows_nonzero(const std::vector<Token>& body, IncidenceReading r) {
  for (std::int64_t t = 0; t < r.tools; ++t) {
    std::int64_t used = 0;
    for (std::int64_t i = 0; i < r.jobs; ++i) {
      used += body[static_cast<std::size_t>(t * r.jobs + i)].value;
    }
    if (used == 0) return false;
  }
  return true;
}

}  // namespace detail

/// Parses an incidence matrix file.  When the two header readings give
/// different matrix shapes, the line layout decides first; if the matrix is
/// not laid out in rows, a reading survives only if every job fits the
/// magazine (and, as a tie-break, every tool row is used).
inline Instance parse_incidence(std::string_view text) {
  const auto tokens = detail::tokenize(text, ErrorKind::MalformedHeader);
  if (tokens.size() < 3) {
    throw Error(ErrorKind::MalformedHeader, "expected a three-integer header");
  }
  const std::int64_t a = tokens[0].value;
  const std::int64_t b = tokens[1].value;
  const std::int64_t cap = tokens[2].value;
  if (a < 1 || b < 1 || cap < 1 || cap > std::numeric_limits<int>::max()) {
    throw Error(ErrorKind::MalformedHeader, "header values must be positive");
  }
  if (tokens[0].line != tokens[2].line) {
    throw Error(ErrorKind::MalformedHeader, "header must sit on one line");
  }
  std::vector<detail::Token> body(tokens.begin() + 3, tokens.end());
  if (static_cast<std::int64_t>(body.size()) != a * b) {
    throw Error(ErrorKind::ShapeMismatch,
                "expected " + std::to_string(a * b) + " matrix entries, found " +
                    std::to_string(body.size()));
  }

  std::vector<detail::IncidenceReading> readings{{a, b}};
  if (a != b) readings.push_back({b, a});

  // Row layout: entries grouped into lines of equal length name the job count.
  if (readings.size() == 2 && !body.empty()) {
    std::vector<std::int64_t> per_line;
    int current = -1;
    for (const auto& tok : body) {
      if (tok.line != current) {
        per_line.push_back(0);
        current = tok.line;
      }
      ++per_line.back();
    }
    const bool uniform =
        per_line.size() > 1 &&
        std::all_of(per_line.begin(), per_line.end(),
                    [&](std::int64_t c) { return c == per_line.front(); });
    if (uniform) {
      std::erase_if(readings, [&](const detail::IncidenceReading& r) {
        return r.jobs != per_line.front();
      });
    }
  }
  if (readings.empty()) {
    throw Error(ErrorKind::ShapeMismatch, "matrix rows match neither header reading");
  }

  for (std::size_t k = 0; k < body.size(); ++k) {
    if (body[k].value != 0 && body[k].value != 1) {
      const auto jobs = readings.front().jobs;
      const auto row = static_cast<std::int64_t>(k) / jobs + 1;
      const auto col = static_cast<std::int64_t>(k) % jobs + 1;
      throw Error(ErrorKind::NonBinaryEntry,
                  "entry (" + std::to_string(row) + "," + std::to_string(col) +
                      ") is " + std::to_string(body[k].value),
                  row);
    }
  }

  if (readings.size() == 2) {
    std::vector<detail::IncidenceReading> fits;
    for (const auto& r : readings) {
      if (detail::reading_plausible(body, r, cap)) fits.push_back(r);
    }
    if (fits.size() == 2) {
      std::erase_if(fits, [&](const detail::IncidenceReading& r) {
        return !detail::rows_nonzero(body, r);
      });
    }
    if (fits.size() == 2) {
      throw Error(ErrorKind::AmbiguousHeader,
                  "both 'm n C' and 'n m C' readings are valid");
    }
    if (fits.size() == 1) readings = fits;
    else readings.resize(1);
  }
  return validate_instance(
      detail::incidence_to_raw(body, readings.front(), static_cast<int>(cap)));
}

/// Parses the canonical line-oriented format.  Ids may be 0-based or sparse;
/// they are remapped to 1..m.
inline Instance parse_canonical(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw Error(ErrorKind::MalformedHeader, "empty input");
  const auto header = detail::parse_ints(lines[0], 0, ErrorKind::MalformedHeader);
  if (header.size() != 3 || header[0] < 1 || header[1] < 1 || header[2] < 1 ||
      header[2] > std::numeric_limits<int>::max()) {
    throw Error(ErrorKind::MalformedHeader, "expected header 'n m C' of positive integers");
  }
  const std::int64_t n = header[0];
  if (static_cast<std::int64_t>(lines.size()) - 1 != n) {
    throw Error(ErrorKind::ShapeMismatch,
                "header declares " + std::to_string(n) + " jobs, found " +
                    std::to_string(lines.size() - 1) + " job lines");
  }
  RawInstance raw;
  raw.capacity = static_cast<int>(header[2]);
  std::vector<std::int64_t> distinct;
  for (std::int64_t i = 1; i <= n; ++i) {
    auto ids = detail::parse_ints(lines[static_cast<std::size_t>(i)],
                                  static_cast<int>(i), ErrorKind::MalformedEntry);
    for (std::int64_t id : ids) {
      if (id < 0) {
        throw Error(ErrorKind::MalformedEntry,
                    "negative tool id on job line " + std::to_string(i), i);
      }
    }
    distinct.insert(distinct.end(), ids.begin(), ids.end());
    raw.tool_sets.push_back(std::move(ids));
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (static_cast<std::int64_t>(distinct.size()) > header[1]) {
    throw Error(ErrorKind::ShapeMismatch,
                "header declares " + std::to_string(header[1]) + " tools, found " +
                    std::to_string(distinct.size()));
  }
  return validate_instance(raw);
}

enum class InstanceFormat { Auto, Canonical, Incidence };

/// Auto mode reads a file as an incidence matrix when the body holds exactly
/// a*b binary entries and parses as such; otherwise as canonical.
inline Instance parse_instance(std::string_view text,
                               InstanceFormat format = InstanceFormat::Auto) {
  switch (format) {
    case InstanceFormat::Canonical: return parse_canonical(text);
    case InstanceFormat::Incidence: return parse_incidence(text);
    case InstanceFormat::Auto: break;
  }
  std::vector<detail::Token> tokens;
  try {
    tokens = detail::tokenize(text, ErrorKind::MalformedEntry);
  } catch (const Error&) {
    return parse_canonical(text);
  }
  const bool binary_body =
      tokens.size() >= 3 && tokens[0].value > 0 && tokens[1].value > 0 &&
      static_cast<std::int64_t>(tokens.size() - 3) == tokens[0].value * tokens[1].value &&
      std::all_of(tokens.begin() + 3, tokens.end(),
                  [](const detail::Token& t) { return t.value == 0 || t.value == 1; });
  if (binary_body) {
    try {
      return parse_incidence(text);
    } catch (const Error&) {
    }
  }
  return parse_canonical(text);
}

/// Canonical text; byte-identical for equal instances.  Ids are written in
/// the internal 1..m numbering.
inline std::string write_canonical(const Instance& inst) {
  std::string out = std::to_string(inst.n()) + ' ' + std::to_string(inst.m()) +
                    ' ' + std::to_string(inst.capacity()) + '\n';
  for (const auto& set : inst.tool_sets()) {
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(set[k]);
    }
    out += '\n';
  }
  return out;
}

/// Incidence text with header `m n C`, one matrix row per tool.
inline std::string write_incidence(const Instance& inst) {
  std::string out = std::to_string(inst.m()) + ' ' + std::to_string(inst.n()) +
                    ' ' + std::to_string(inst.capacity()) + '\n';
  std::vector<std::string> rows(static_cast<std::size_t>(inst.m()));
  for (Moment i = 1; i <= inst.n(); ++i) {
    std::vector<char> used(static_cast<std::size_t>(inst.m()) + 1, 0);
    for (ToolId t : inst.tools(i)) used[static_cast<std::size_t>(t)] = 1;
    for (ToolId t = 1; t <= inst.m(); ++t) {
      auto& row = rows[static_cast<std::size_t>(t - 1)];
      if (i > 1) row += ' ';
      row += used[static_cast<std::size_t>(t)] ? '1' : '0';
    }
  }
  for (const auto& row : rows) out += row + '\n';
  return out;
}

/// Unbiased integer in [0, bound) from the raw generator output.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

/// Unbiased integer in [lo, hi].
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo,
                                std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// Uniform k-subset of 1..m (Floyd), sorted.
inline std::vector<ToolId> random_subset(std::mt19937_64& rng, int m, int k) {
  std::vector<ToolId> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  for (int j = m - k + 1; j <= m; ++j) {
    const auto t = static_cast<ToolId>(uniform_int(rng, 1, j));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(static_cast<ToolId>(j));
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

struct GeneratorConfig {
  int n = 1;
  int m = 1;
  int capacity = 1;
  int min_tools = 1;
  int max_tools = 1;
  std::uint64_t seed = 0;
};

inline void check_config(const GeneratorConfig& cfg) {
  if (cfg.n < 1 || cfg.min_tools < 1 || cfg.min_tools > cfg.max_tools ||
      cfg.max_tools > cfg.capacity || cfg.capacity > cfg.m) {
    throw Error(ErrorKind::InfeasibleConfig,
                "need n >= 1 and 1 <= min_tools <= max_tools <= C <= m (n=" +
                    std::to_string(cfg.n) + " m=" + std::to_string(cfg.m) +
                    " C=" + std::to_string(cfg.capacity) + " sizes " +
                    std::to_string(cfg.min_tools) + ".." +
                    std::to_string(cfg.max_tools) + ")");
  }
}

/// Random instance; tools that end up unused are removed, so the resulting
/// m may be smaller than cfg.m.
inline Instance generate(const GeneratorConfig& cfg) {
  check_config(cfg);
  std::mt19937_64 rng(cfg.seed);
  RawInstance raw;
  raw.capacity = cfg.capacity;
  raw.tool_sets.reserve(static_cast<std::size_t>(cfg.n));
  for (int i = 0; i < cfg.n; ++i) {
    const auto k = static_cast<int>(uniform_int(rng, cfg.min_tools, cfg.max_tools));
    const auto subset = random_subset(rng, cfg.m, k);
    raw.tool_sets.emplace_back(subset.begin(), subset.end());
  }
  return validate_instance(raw);
}

/// Job order with T'_i = T_{perm[i-1]}; `perm` is a permutation of 1..n.
inline Instance permute_jobs(const Instance& inst, const std::vector<Moment>& perm) {
  const auto n = static_cast<std::size_t>(inst.n());
  if (perm.size() != n) {
    throw Error(ErrorKind::NotAPermutation,
                "permutation has " + std::to_string(perm.size()) +
                    " entries for " + std::to_string(n) + " jobs");
  }
  std::vector<char> hit(n + 1, 0);
  for (Moment p : perm) {
    if (p < 1 || static_cast<std::size_t>(p) > n || hit[static_cast<std::size_t>(p)]) {
      throw Error(ErrorKind::NotAPermutation,
                  "entry " + std::to_string(p) + " is out of range or repeated", p);
    }
    hit[static_cast<std::size_t>(p)] = 1;
  }
  RawInstance raw;
  raw.capacity = inst.capacity();
  for (Moment p : perm) {
    std::vector<std::int64_t> ids;
    for (ToolId t : inst.tools(p)) ids.push_back(inst.original_id(t));
    raw.tool_sets.push_back(std::move(ids));
  }
  // The id remapping is monotone, so internal ids come out unchanged.
  return validate_instance(raw);
}

/// Uniform permutation of 1..n (Fisher-Yates over uniform_below).
inline std::vector<Moment> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<Moment> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace tlp

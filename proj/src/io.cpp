#include "gapamp/io.hpp"

#include <fstream>
#include <sstream>

namespace gapamp {

namespace {

Int read_int(std::istringstream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) fail_param(std::string("missing token: ") + what);
  try {
    return Int(tok);
  } catch (const std::exception&) {
    fail_param(std::string("malformed integer for ") + what + ": " + tok);
  }
}

std::size_t read_size(std::istringstream& in, const char* what) {
  Int v = read_int(in, what);
  if (v < 0 || v > Int(1) << 32) fail_param(std::string("size out of range for ") + what);
  return static_cast<std::size_t>(v);
}

void append_row(std::string& out, const IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (j > 0) out += ' ';
    out += m.at(i, j).str();
  }
  out += '\n';
}

void read_matrix_body(std::istringstream& in, IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = read_int(in, "matrix entry");
  }
}

void expect_end(std::istringstream& in, const char* what) {
  std::string extra;
  if (in >> extra) fail_param(std::string("trailing data in ") + what + ": " + extra);
}

}  // namespace

std::string format_matrix(const IntMatrix& m) {
  std::string out = std::to_string(m.rows) + " " + std::to_string(m.cols) + "\n";
  for (std::size_t i = 0; i < m.rows; ++i) append_row(out, m, i);
  return out;
}

IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = read_size(in, "matrix rows");
  std::size_t cols = read_size(in, "matrix cols");
  IntMatrix m(rows, cols);
  read_matrix_body(in, m);
  expect_end(in, "matrix file");
  return m;
}

std::string format_lattice(const Lattice& l) {
  std::string out = std::to_string(l.ambient) + " " + std::to_string(l.rank) + "\n";
  for (std::size_t i = 0; i < l.basis.rows; ++i) append_row(out, l.basis, i);
  return out;
}

Lattice parse_lattice(const std::string& text) {
  std::istringstream in(text);
  std::size_t ambient = read_size(in, "lattice ambient");
  std::size_t rank = read_size(in, "lattice rank");
  IntMatrix b(ambient, rank);
  read_matrix_body(in, b);
  expect_end(in, "lattice file");
  return Lattice::from_basis(b);
}

std::string format_bitmatrix(const BitMatrix& m) {
  std::string out = std::to_string(m.rows) + " " + std::to_string(m.cols) + "\n";
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out += m.get(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

BitMatrix parse_bitmatrix(const std::string& text) {
  std::istringstream in(text);
  std::size_t rows = read_size(in, "bit-matrix rows");
  std::size_t cols = read_size(in, "bit-matrix cols");
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::string line;
    if (!(in >> line)) fail_param("missing bit-matrix row");
    if (line.size() != cols) fail_param("bit-matrix row has wrong length");
    for (std::size_t j = 0; j < cols; ++j) {
      if (line[j] == '1') {
        m.set(i, j, true);
      } else if (line[j] != '0') {
        fail_param("bit-matrix rows must be 0/1 strings");
      }
    }
  }
  expect_end(in, "bit-matrix file");
  return m;
}

std::string format_setcover(const SetCoverInstance& inst) {
  std::string out = std::to_string(inst.universe) + " " + std::to_string(inst.sets.size()) + " " +
                    std::to_string(inst.d) + " " + numerator(inst.eta).str() + " " +
                    denominator(inst.eta).str() + "\n";
  for (const auto& s : inst.sets) {
    out += std::to_string(s.size());
    for (std::size_t e : s) out += " " + std::to_string(e);
    out += '\n';
  }
  return out;
}

SetCoverInstance parse_setcover(const std::string& text) {
  std::istringstream in(text);
  SetCoverInstance inst;
  inst.universe = read_size(in, "universe size");
  std::size_t n_sets = read_size(in, "set count");
  Int d = read_int(in, "distance parameter");
  if (d <= 0) fail_param("distance parameter must be positive");
  inst.d = static_cast<std::uint64_t>(d);
  Int num = read_int(in, "eta numerator");
  Int den = read_int(in, "eta denominator");
  if (den <= 0) fail_param("eta denominator must be positive");
  inst.eta = Rat(num, den);
  for (std::size_t j = 0; j < n_sets; ++j) {
    std::size_t sz = read_size(in, "set size");
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < sz; ++i) s.push_back(read_size(in, "set element"));
    inst.sets.push_back(std::move(s));
  }
  expect_end(in, "set-cover file");
  inst.validate();
  return inst;
}

std::string format_gap_instance(const GapInstance& g) {
  std::string p_tok = g.p.inf ? "inf" : std::to_string(g.p.p);
  std::string out = std::to_string(g.basis.rows) + " " + std::to_string(g.basis.cols) + " " +
                    numerator(g.threshold).str() + " " + denominator(g.threshold).str() + " " +
                    p_tok + "\n";
  for (std::size_t i = 0; i < g.basis.rows; ++i) append_row(out, g.basis, i);
  return out;
}

GapInstance parse_gap_instance(const std::string& text) {
  std::istringstream in(text);
  GapInstance g;
  std::size_t ambient = read_size(in, "gap-instance ambient");
  std::size_t rank = read_size(in, "gap-instance rank");
  Int num = read_int(in, "threshold numerator");
  Int den = read_int(in, "threshold denominator");
  if (den <= 0) fail_param("threshold denominator must be positive");
  g.threshold = Rat(num, den);
  std::string p_tok;
  if (!(in >> p_tok)) fail_param("missing norm selector");
  if (p_tok == "inf") {
    g.p = NormSel::max();
  } else {
    try {
      unsigned long p = std::stoul(p_tok);
      if (p == 0) fail_param("norm exponent must be positive");
      g.p = NormSel::finite(static_cast<unsigned>(p));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail_param("malformed norm selector: " + p_tok);
    }
  }
  g.basis = IntMatrix(ambient, rank);
  read_matrix_body(in, g.basis);
  expect_end(in, "gap-instance file");
  return g;
}

namespace {

std::string join_vec(const IntVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += v[i].str();
  }
  return out;
}

Int parse_int_str(const std::string& tok, const char* what) {
  try {
    return Int(tok);
  } catch (const std::exception&) {
    fail_param(std::string("malformed integer for ") + what + ": " + tok);
  }
}

IntVec split_vec(const std::string& text, const char* what) {
  std::istringstream in(text);
  IntVec v;
  std::string tok;
  while (in >> tok) {
    try {
      v.emplace_back(tok);
    } catch (const std::exception&) {
      fail_param(std::string("malformed integer in ") + what + ": " + tok);
    }
  }
  return v;
}

}  // namespace

std::string format_certificate(const PipelineCertificate& c) {
  std::string out;
  out += "q=" + c.q.str() + "\n";
  out += "seed=" + std::to_string(c.seed) + "\n";
  out += "G=" + c.g_bound.str() + "\n";
  out += "A=" + c.a_bound.str() + "\n";
  out += "w=" + join_vec(c.w) + "\n";
  out += "s=" + join_vec(c.s) + "\n";
  return out;
}

PipelineCertificate parse_certificate(const std::string& text) {
  PipelineCertificate c;
  std::istringstream in(text);
  std::string line;
  bool saw_q = false, saw_seed = false, saw_g = false, saw_a = false, saw_w = false, saw_s = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail_param("certificate line lacks '=': " + line);
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    if (key == "q") {
      c.q = parse_int_str(val, "certificate q");
      saw_q = true;
    } else if (key == "seed") {
      Int s = parse_int_str(val, "certificate seed");
      if (s < 0 || s > Int("18446744073709551615")) fail_param("seed out of range");
      c.seed = static_cast<std::uint64_t>(s);
      saw_seed = true;
    } else if (key == "G") {
      c.g_bound = parse_int_str(val, "certificate G");
      saw_g = true;
    } else if (key == "A") {
      c.a_bound = parse_int_str(val, "certificate A");
      saw_a = true;
    } else if (key == "w") {
      c.w = split_vec(val, "certificate w");
      saw_w = true;
    } else if (key == "s") {
      c.s = split_vec(val, "certificate s");
      saw_s = true;
    } else {
      fail_param("unknown certificate key: " + key);
    }
  }
  if (!(saw_q && saw_seed && saw_g && saw_a && saw_w && saw_s)) {
    fail_param("certificate missing required keys");
  }
  return c;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_param("cannot open file for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail_param("cannot open file for writing: " + path);
  out << content;
  if (!out) fail_param("write failed: " + path);
}

}  // namespace gapamp

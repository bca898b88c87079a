#pragma once

#include <string>

#include "gapamp/gf2.hpp"
#include "gapamp/lattice.hpp"
#include "gapamp/pipeline.hpp"
#include "gapamp/svp.hpp"

namespace gapamp {

// Plain-text formats. Writers are canonical (single spaces, one trailing
// newline, fixed key order) so identical inputs serialize byte-identically.

std::string format_matrix(const IntMatrix& m);
IntMatrix parse_matrix(const std::string& text);

std::string format_lattice(const Lattice& l);
Lattice parse_lattice(const std::string& text);

std::string format_bitmatrix(const BitMatrix& m);
BitMatrix parse_bitmatrix(const std::string& text);

std::string format_setcover(const SetCoverInstance& inst);
SetCoverInstance parse_setcover(const std::string& text);

// Gap instance header: ambient rank threshold_num threshold_den p, with p a
// decimal integer or "inf". The file carries no gamma field; parsing leaves
// gamma_pow at 1.
std::string format_gap_instance(const GapInstance& g);
GapInstance parse_gap_instance(const std::string& text);

std::string format_certificate(const PipelineCertificate& c);
PipelineCertificate parse_certificate(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gapamp

#pragma once

#include <iosfwd>
#include <string>

#include "gvmm/forms.hpp"

namespace gvmm {

/// CSV: header lines (sizes, lengths, degree, component multi-indices), then one row per node
/// with the flat node index followed by every component.
void write_form_csv(std::ostream& os, const FormField& f);
FormField read_form_csv(std::istream& is);

/// Binary block: magic "GVMF", version, dim, degree, sizes, lengths, then components in node order.
/// All numbers little-endian; doubles are IEEE 64-bit.
void write_form_binary(std::ostream& os, const FormField& f);
FormField read_form_binary(std::istream& is);

/// One component restricted to the plane spanned by axes (a, b) through `at`; rows follow a.
void write_slice_csv(std::ostream& os, const FormField& f, std::size_t comp, int a, int b,
                     const std::vector<int>& at);

/// File wrappers; throw IoError when the file cannot be opened.
void save_form(const std::string& path, const FormField& f);
FormField load_form(const std::string& path);

}  // namespace gvmm

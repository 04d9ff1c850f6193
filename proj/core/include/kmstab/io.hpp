#pragma once

#include "kmstab/kmeans.hpp"

#include <iosfwd>
#include <string>

namespace kmstab {

// Doubles are printed with %.17g so a written dataset reads back bit-exact.
std::string format_double(double v);

void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv_file(const std::string& path, const Dataset& data);

Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv_file(const std::string& path);

} // namespace kmstab

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "nicd/dataset.hpp"

namespace nicd {

enum class DataFormat { automatic, csv, arff };

/// Reads a dataset. The class is always the last column.
///
/// CSV: the first row is a header of `name:kind` tokens with kind `num` or
/// `cat`; the last token must be `<name>:cat`. Category sets (and the class
/// list) are the distinct observed values in file order. `?` is missing.
///
/// ARFF: `@relation`, `@attribute <name> numeric|real|integer|{v1,v2,...}`,
/// then `@data` with comma-separated rows. Keywords are case-insensitive,
/// `%` starts a comment, `?` is missing, values may be quoted.
///
/// `automatic` picks ARFF for a `.arff` extension and CSV otherwise. The
/// dataset name is the file stem. Throws IngestionError naming the line.
Dataset load_dataset(const std::filesystem::path& path, DataFormat format = DataFormat::automatic);

Dataset read_csv(std::istream& in, const std::string& name, const std::string& source = "<stream>");
Dataset read_arff(std::istream& in, const std::string& name, const std::string& source = "<stream>");

/// Writes the CSV dialect accepted by read_csv.
void write_csv(std::ostream& out, const Dataset& ds);
void save_csv(const std::filesystem::path& path, const Dataset& ds);

}  // namespace nicd

#include "lvqkit/dataset.hpp"

#include "lvqkit/error.hpp"
#include "lvqkit/random.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace lvqkit {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return ss.str();
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    s = s.substr(b, e - b + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find('\n', start);
        auto line = text.substr(start, pos == std::string_view::npos ? pos : pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back(line);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool blank(std::string_view line) { return trim(line).empty(); }

// Parses the whole token as a double. Accepts nan/inf spellings so the caller
// can report them as non-finite rather than as garbage.
std::optional<double> parse_number(std::string_view tok) {
    if (tok.empty()) return std::nullopt;
    if (tok.front() == '+') tok.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

double parse_finite(std::string_view tok, std::size_t row, std::size_t col) {
    auto v = parse_number(tok);
    if (!v) {
        throw ParseError("cannot parse '" + std::string(tok) + "' as a number at row " +
                         std::to_string(row) + ", column " + std::to_string(col));
    }
    if (!std::isfinite(*v)) {
        throw ParseError("non-finite value '" + std::string(tok) + "' at row " + std::to_string(row) +
                         ", column " + std::to_string(col));
    }
    return *v;
}

struct RemappedLabels {
    LabelVector labels;
    std::vector<std::string> names;
};

// 1..C in numeric order when every token is a number, lexicographic otherwise.
RemappedLabels remap_labels(const std::vector<std::string>& tokens) {
    constexpr std::size_t kMaxClasses = 256;
    bool numeric = std::all_of(tokens.begin(), tokens.end(),
                               [](const std::string& t) { return parse_number(t).has_value(); });
    std::vector<std::string> distinct(tokens.begin(), tokens.end());
    if (numeric) {
        std::sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
            double va = *parse_number(a), vb = *parse_number(b);
            return va < vb || (va == vb && a < b);
        });
        // "1" and "1.0" name the same class.
        distinct.erase(std::unique(distinct.begin(), distinct.end(),
                                   [](const std::string& a, const std::string& b) {
                                       return *parse_number(a) == *parse_number(b);
                                   }),
                       distinct.end());
    } else {
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    }
    if (distinct.size() > kMaxClasses) {
        throw ParseError("label column has " + std::to_string(distinct.size()) +
                         " distinct values (at most 256 supported)");
    }
    RemappedLabels out;
    out.names = distinct;
    out.labels.reserve(tokens.size());
    for (const auto& t : tokens) {
        std::size_t pos = 0;
        if (numeric) {
            double v = *parse_number(t);
            pos = static_cast<std::size_t>(
                std::find_if(distinct.begin(), distinct.end(),
                             [v](const std::string& d) { return *parse_number(d) == v; }) -
                distinct.begin());
        } else {
            pos = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), t) -
                                           distinct.begin());
        }
        out.labels.push_back(static_cast<Label>(pos + 1));
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// LabeledDataset / DissimilarityData

void LabeledDataset::validate() const {
    if (size() < 1) throw ContractError("dataset is empty");
    if (static_cast<Index>(labels.size()) != size()) {
        throw ContractError("dataset has " + std::to_string(size()) + " rows but " +
                            std::to_string(labels.size()) + " labels");
    }
    if (class_count < 1) throw ContractError("dataset has no classes");
    std::vector<Index> counts(class_count, 0);
    for (Label y : labels) {
        if (y < 1 || y > class_count) {
            throw ContractError("label " + std::to_string(y) + " outside 1.." + std::to_string(class_count));
        }
        ++counts[y - 1];
    }
    for (int c = 0; c < class_count; ++c) {
        if (counts[c] == 0) throw ContractError("class " + std::to_string(c + 1) + " has no samples");
    }
    if (!features.allFinite()) throw ContractError("dataset contains non-finite feature values");
}

LabeledDataset LabeledDataset::subset(std::span<const Index> indices) const {
    LabeledDataset out;
    out.features.resize(static_cast<Index>(indices.size()), dim());
    out.labels.reserve(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        out.features.row(static_cast<Index>(r)) = features.row(indices[r]);
        out.labels.push_back(labels[static_cast<std::size_t>(indices[r])]);
    }
    out.class_count = class_count;
    out.class_names = class_names;
    return out;
}

std::vector<Index> LabeledDataset::class_sizes() const {
    std::vector<Index> counts(static_cast<std::size_t>(class_count), 0);
    for (Label y : labels) ++counts[static_cast<std::size_t>(y - 1)];
    return counts;
}

void DissimilarityData::validate() const {
    const Index n = matrix.rows();
    if (n < 1 || matrix.cols() != n) throw ContractError("dissimilarity matrix must be square and non-empty");
    if (static_cast<Index>(labels.size()) != n) throw ContractError("dissimilarity labels do not match matrix size");
    for (Index i = 0; i < n; ++i) {
        if (matrix(i, i) != 0.0) {
            throw ContractError("dissimilarity diagonal entry " + std::to_string(i) + " is not zero");
        }
        for (Index j = 0; j < n; ++j) {
            double a = matrix(i, j);
            if (!std::isfinite(a) || a < 0.0) {
                throw ContractError("dissimilarity entries must be finite and non-negative");
            }
            if (j > i) {
                double b = matrix(j, i);
                double tol = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
                if (std::abs(a - b) > tol) throw ContractError("dissimilarity matrix is not symmetric");
            }
        }
    }
    for (Label y : labels) {
        if (y < 1 || y > class_count) throw ContractError("dissimilarity label outside 1..C");
    }
}

DissimilarityData DissimilarityData::subset(std::span<const Index> indices) const {
    DissimilarityData out;
    const auto n = static_cast<Index>(indices.size());
    out.matrix.resize(n, n);
    for (Index c = 0; c < n; ++c) {
        for (Index r = 0; r < n; ++r) out.matrix(r, c) = matrix(indices[r], indices[c]);
    }
    for (Index i : indices) out.labels.push_back(labels[static_cast<std::size_t>(i)]);
    out.class_count = class_count;
    out.class_names = class_names;
    return out;
}

// ---------------------------------------------------------------------------
// CSV

LabeledDataset parse_csv(const std::string& text, const LabelColumn& column) {
    auto lines = lines_of(text);
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!blank(lines[i])) rows.emplace_back(i + 1, split(lines[i], ','));
    }
    if (rows.empty()) throw ParseError("CSV input is empty");

    const std::size_t width = rows.front().second.size();
    if (width < 2) throw ParseError("CSV needs at least one feature column and a label column");

    auto resolve_index = [&](const std::vector<std::string_view>* header) -> std::size_t {
        if (column.index) {
            if (*column.index < 0 || static_cast<std::size_t>(*column.index) >= width) {
                throw ContractError("label column index " + std::to_string(*column.index) + " out of range");
            }
            return static_cast<std::size_t>(*column.index);
        }
        if (column.name) {
            if (!header) throw ParseError("label column '" + *column.name + "' requested but CSV has no header");
            for (std::size_t c = 0; c < header->size(); ++c) {
                if ((*header)[c] == *column.name) return c;
            }
            throw ParseError("no column named '" + *column.name + "' in CSV header");
        }
        return width - 1;
    };

    // A first row whose feature cells are not all numeric is a header.
    bool has_header = false;
    {
        const auto& first = rows.front().second;
        std::size_t label_guess = column.index ? static_cast<std::size_t>(std::max(0, *column.index)) : width - 1;
        if (column.name) {
            has_header = true;
        } else {
            for (std::size_t c = 0; c < first.size(); ++c) {
                if (c != label_guess && !parse_number(first[c])) {
                    has_header = true;
                    break;
                }
            }
        }
    }
    const std::size_t label_col = resolve_index(has_header ? &rows.front().second : nullptr);
    const std::size_t first_data = has_header ? 1 : 0;
    if (rows.size() <= first_data) throw ParseError("CSV input has a header but no data rows");

    const auto n = static_cast<Index>(rows.size() - first_data);
    const auto d = static_cast<Index>(width - 1);
    LabeledDataset out;
    out.features.resize(n, d);
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(n));
    for (Index r = 0; r < n; ++r) {
        const auto& [line_no, cells] = rows[first_data + static_cast<std::size_t>(r)];
        if (cells.size() != width) {
            throw ParseError("row " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                             " columns, expected " + std::to_string(width));
        }
        Index f = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_col) {
                if (cells[c].empty()) throw ParseError("empty label at row " + std::to_string(line_no));
                tokens.emplace_back(cells[c]);
            } else {
                out.features(r, f++) = parse_finite(cells[c], line_no, c);
            }
        }
    }
    auto remapped = remap_labels(tokens);
    out.labels = std::move(remapped.labels);
    out.class_names = std::move(remapped.names);
    out.class_count = static_cast<int>(out.class_names.size());
    return out;
}

LabeledDataset load_csv(const std::filesystem::path& path, const LabelColumn& column) {
    return parse_csv(read_file(path), column);
}

std::string to_csv(const LabeledDataset& data) {
    std::string out;
    for (Index c = 0; c < data.dim(); ++c) out += "f" + std::to_string(c + 1) + ",";
    out += "label\n";
    for (Index r = 0; r < data.size(); ++r) {
        for (Index c = 0; c < data.dim(); ++c) {
            out += format_double(data.features(r, c));
            out += ',';
        }
        out += std::to_string(data.labels[static_cast<std::size_t>(r)]);
        out += '\n';
    }
    return out;
}

void write_csv(const LabeledDataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << to_csv(data);
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Public benchmark files

LabeledDataset parse_image_segmentation(const std::string& text) {
    constexpr std::size_t kAttributes = 19;
    constexpr Index kExpectedRows = 2100;
    constexpr int kExpectedClasses = 7;

    std::vector<std::vector<double>> rows;
    std::vector<std::string> tokens;
    auto lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (blank(lines[i])) continue;
        auto cells = split(lines[i], ',');
        // Header lines carry attribute names only.
        if (cells.size() != kAttributes + 1 || !parse_number(cells[1])) {
            if (rows.empty()) continue;
            throw ParseError("malformed Image Segmentation row " + std::to_string(i + 1));
        }
        std::vector<double> values;
        for (std::size_t a = 0; a < kAttributes; ++a) {
            // Attributes 3, 4 and 5 (1-based) are constant in the source data.
            if (a >= 2 && a <= 4) continue;
            values.push_back(parse_finite(cells[a + 1], i + 1, a + 1));
        }
        rows.push_back(std::move(values));
        tokens.emplace_back(cells[0]);
    }
    if (static_cast<Index>(rows.size()) != kExpectedRows) {
        throw ParseError("Image Segmentation file has " + std::to_string(rows.size()) + " samples, expected 2100");
    }
    auto remapped = remap_labels(tokens);
    if (static_cast<int>(remapped.names.size()) != kExpectedClasses) {
        throw ParseError("Image Segmentation file has " + std::to_string(remapped.names.size()) +
                         " classes, expected 7");
    }
    LabeledDataset out;
    out.features.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            out.features(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
        }
    }
    out.labels = std::move(remapped.labels);
    out.class_names = std::move(remapped.names);
    out.class_count = kExpectedClasses;
    return out;
}

LabeledDataset load_image_segmentation(const std::filesystem::path& path) {
    return parse_image_segmentation(read_file(path));
}

LabeledDataset load_usps(std::span<const std::filesystem::path> paths) {
    constexpr std::size_t kPixels = 256;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> tokens;
    for (const auto& path : paths) {
        auto text = read_file(path);
        auto lines = lines_of(text);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (blank(lines[i])) continue;
            auto cells = split_ws(lines[i]);
            if (cells.size() > 1 && cells[1].find(':') != std::string::npos) {
                // LIBSVM layout: label idx:value ..., 1-based indices, zeros omitted.
                double digit = parse_finite(cells[0], i + 1, 0);
                std::vector<double> values(kPixels, 0.0);
                for (std::size_t k = 1; k < cells.size(); ++k) {
                    const auto colon = cells[k].find(':');
                    if (colon == std::string::npos) {
                        throw ParseError(path.string() + ": row " + std::to_string(i + 1) + " column " +
                                         std::to_string(k) + ": expected index:value");
                    }
                    const double idx = parse_finite(cells[k].substr(0, colon), i + 1, k);
                    if (idx < 1 || idx > static_cast<double>(kPixels) || idx != std::floor(idx)) {
                        throw ParseError(path.string() + ": row " + std::to_string(i + 1) + " column " +
                                         std::to_string(k) + ": pixel index out of range");
                    }
                    values[static_cast<std::size_t>(idx) - 1] = parse_finite(cells[k].substr(colon + 1), i + 1, k);
                }
                rows.push_back(std::move(values));
                tokens.push_back(std::to_string(static_cast<int>(std::lround(digit))));
                continue;
            }
            if (cells.size() != kPixels + 1) {
                throw ParseError(path.string() + ": row " + std::to_string(i + 1) + " has " +
                                 std::to_string(cells.size()) + " fields, expected 257");
            }
            double digit = parse_finite(cells[0], i + 1, 0);
            std::vector<double> values(kPixels);
            for (std::size_t p = 0; p < kPixels; ++p) values[p] = parse_finite(cells[p + 1], i + 1, p + 1);
            rows.push_back(std::move(values));
            tokens.push_back(std::to_string(static_cast<int>(std::lround(digit))));
        }
    }
    if (rows.empty()) throw ParseError("USPS input is empty");
    auto remapped = remap_labels(tokens);
    LabeledDataset out;
    out.features.resize(static_cast<Index>(rows.size()), static_cast<Index>(kPixels));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < kPixels; ++c) out.features(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
    out.labels = std::move(remapped.labels);
    out.class_names = std::move(remapped.names);
    out.class_count = static_cast<int>(out.class_names.size());
    return out;
}

LabeledDataset stratified_subset(const LabeledDataset& data, Index count, Seed seed) {
    const Index n = data.size();
    if (count < 1 || count > n) throw ContractError("subset size must lie in 1..N");
    auto sizes = data.class_sizes();
    // Largest-remainder apportionment of `count` over the classes.
    std::vector<Index> quota(sizes.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    Index assigned = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        double exact = static_cast<double>(count) * static_cast<double>(sizes[c]) / static_cast<double>(n);
        quota[c] = static_cast<Index>(std::floor(exact));
        assigned += quota[c];
        remainders.emplace_back(exact - std::floor(exact), c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < count; ++i, ++assigned) ++quota[remainders[i].second];

    auto rng = make_rng(seed, {0x5ab5e7});
    std::vector<Index> chosen;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        std::vector<Index> members;
        for (Index i = 0; i < n; ++i) {
            if (data.labels[static_cast<std::size_t>(i)] == static_cast<Label>(c + 1)) members.push_back(i);
        }
        std::shuffle(members.begin(), members.end(), rng);
        chosen.insert(chosen.end(), members.begin(), members.begin() + quota[c]);
    }
    std::sort(chosen.begin(), chosen.end());
    return data.subset(chosen);
}

DissimilarityData load_dissimilarity(const std::filesystem::path& matrix_path,
                                     const std::filesystem::path& labels_path) {
    auto text = read_file(matrix_path);
    std::vector<std::vector<double>> rows;
    auto lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (blank(lines[i])) continue;
        auto cells = split(lines[i], ',');
        std::vector<double> values;
        for (std::size_t c = 0; c < cells.size(); ++c) values.push_back(parse_finite(cells[c], i + 1, c));
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw ParseError("dissimilarity matrix file is empty");
    const auto n = rows.size();
    DissimilarityData out;
    out.matrix.resize(static_cast<Index>(n), static_cast<Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) throw ParseError("dissimilarity matrix row " + std::to_string(r + 1) + " is not length N");
        for (std::size_t c = 0; c < n; ++c) out.matrix(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }

    auto label_text = read_file(labels_path);
    std::vector<std::string> tokens;
    for (auto line : lines_of(label_text)) {
        if (blank(line)) continue;
        auto tok = trim(split(line, ',').back());
        tokens.emplace_back(tok);
    }
    if (!tokens.empty() && tokens.size() == n + 1 && !parse_number(tokens.front())) tokens.erase(tokens.begin());
    if (tokens.size() != n) {
        throw ParseError("label file has " + std::to_string(tokens.size()) + " labels for a " + std::to_string(n) +
                         "-sample matrix");
    }
    auto remapped = remap_labels(tokens);
    out.labels = std::move(remapped.labels);
    out.class_names = std::move(remapped.names);
    out.class_count = static_cast<int>(out.class_names.size());
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Synthetic data

const std::vector<std::vector<int>>& multimodal_cluster_sizes() {
    static const std::vector<std::vector<int>> sizes = {
        {50, 50, 50, 50, 50, 50, 50, 50, 50, 150, 150, 150, 100, 100, 100},
        {100, 100, 100, 50, 50, 50, 50, 50, 50, 200, 200, 200},
        {400, 400, 400},
    };
    return sizes;
}

LabeledDataset gen_multimodal(Seed seed) {
    constexpr double kSpread = 0.025;
    const auto& sizes = multimodal_cluster_sizes();
    Index total = 0;
    for (const auto& cls : sizes) total += std::accumulate(cls.begin(), cls.end(), Index{0});

    LabeledDataset out;
    out.features.resize(total, 2);
    out.labels.reserve(static_cast<std::size_t>(total));
    out.class_count = static_cast<int>(sizes.size());
    auto rng = make_rng(seed, {0x6d6d});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, kSpread);
    Index row = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        out.class_names.push_back(std::to_string(c + 1));
        for (int count : sizes[c]) {
            const double cx = unit(rng);
            const double cy = unit(rng);
            for (int s = 0; s < count; ++s, ++row) {
                out.features(row, 0) = cx + noise(rng);
                out.features(row, 1) = cy + noise(rng);
                out.labels.push_back(static_cast<Label>(c + 1));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Folds

std::vector<FoldSplit> kfold(const LabelVector& labels, int class_count, int k, Seed seed) {
    if (k < 2) throw ContractError("k-fold needs k >= 2");
    const auto n = static_cast<Index>(labels.size());
    std::vector<std::vector<Index>> members(static_cast<std::size_t>(class_count));
    for (Index i = 0; i < n; ++i) {
        Label y = labels[static_cast<std::size_t>(i)];
        if (y < 1 || y > class_count) throw ContractError("label outside 1..C in k-fold");
        members[static_cast<std::size_t>(y - 1)].push_back(i);
    }
    for (std::size_t c = 0; c < members.size(); ++c) {
        if (static_cast<int>(members[c].size()) < k) {
            throw ContractError("class " + std::to_string(c + 1) + " has " + std::to_string(members[c].size()) +
                                " samples, fewer than k=" + std::to_string(k));
        }
    }

    auto rng = make_rng(seed, {0xf01d});
    std::vector<int> fold_of(static_cast<std::size_t>(n), 0);
    // Deal each shuffled class round-robin, continuing where the previous class
    // stopped so total fold sizes stay balanced too.
    std::size_t offset = 0;
    for (auto& cls : members) {
        std::shuffle(cls.begin(), cls.end(), rng);
        for (std::size_t p = 0; p < cls.size(); ++p) {
            fold_of[static_cast<std::size_t>(cls[p])] = static_cast<int>((offset + p) % static_cast<std::size_t>(k));
        }
        offset = (offset + cls.size()) % static_cast<std::size_t>(k);
    }

    std::vector<FoldSplit> folds(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f) folds[static_cast<std::size_t>(f)].fold_id = f;
    for (Index i = 0; i < n; ++i) {
        for (int f = 0; f < k; ++f) {
            auto& split = folds[static_cast<std::size_t>(f)];
            (fold_of[static_cast<std::size_t>(i)] == f ? split.test_indices : split.train_indices).push_back(i);
        }
    }
    return folds;
}

std::vector<FoldSplit> kfold(const LabeledDataset& data, int k, Seed seed) {
    return kfold(data.labels, data.class_count, k, seed);
}

// ---------------------------------------------------------------------------
// Preprocessing

ZScoreParams zscore_fit(const RowMatrix& features) {
    if (features.rows() < 1) throw ContractError("z-score fit needs a non-empty training set");
    ZScoreParams p;
    p.mean = features.colwise().mean().transpose();
    p.scale.resize(features.cols());
    for (Index c = 0; c < features.cols(); ++c) {
        auto col = features.col(c);
        if (col.maxCoeff() == col.minCoeff()) {
            p.scale(c) = 0.0;
            continue;
        }
        double var = (col.array() - p.mean(c)).square().mean();
        p.scale(c) = std::sqrt(var);
    }
    return p;
}

RowMatrix ZScoreParams::apply(const RowMatrix& features) const {
    if (features.cols() != mean.size()) throw ContractError("z-score dimension mismatch");
    RowMatrix out(features.rows(), features.cols());
    for (Index c = 0; c < features.cols(); ++c) {
        if (scale(c) == 0.0) {
            out.col(c).setZero();
        } else {
            out.col(c) = (features.col(c).array() - mean(c)) / scale(c);
        }
    }
    return out;
}

ZScoreResult zscore_fit_apply(const LabeledDataset& train, const LabeledDataset& test) {
    ZScoreResult r;
    r.params = zscore_fit(train.features);
    r.train = train;
    r.train.features = r.params.apply(train.features);
    r.test = test;
    r.test.features = r.params.apply(test.features);
    return r;
}

DissimilarityData vectorial_to_dissimilarity(const LabeledDataset& data) {
    const Index n = data.size();
    DissimilarityData out;
    out.matrix.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        out.matrix(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            double d = (data.features.row(i) - data.features.row(j)).squaredNorm();
            out.matrix(i, j) = d;
            out.matrix(j, i) = d;
        }
    }
    out.labels = data.labels;
    out.class_count = data.class_count;
    out.class_names = data.class_names;
    return out;
}

}  // namespace lvqkit

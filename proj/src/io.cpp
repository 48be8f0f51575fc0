#include "thincc/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace thincc {

namespace {

struct NumberedTokens {
    long line = 0;
    std::vector<std::string> tokens;
};

// whole file as comment-stripped, tokenized, non-empty lines
std::vector<NumberedTokens> read_token_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path.string());
    std::vector<NumberedTokens> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        NumberedTokens nt;
        nt.line = lineno;
        std::string tok;
        while (ss >> tok) nt.tokens.push_back(tok);
        if (!nt.tokens.empty()) out.push_back(std::move(nt));
    }
    return out;
}

int64_t parse_int(const std::string& file, long line, const std::string& tok) {
    try {
        size_t used = 0;
        const int64_t v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(file, line, "expected an integer, found '" + tok + "'");
    }
}

double parse_double(const std::string& file, long line, const std::string& tok) {
    try {
        size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(file, line, "expected a number, found '" + tok + "'");
    }
}

std::string tuple_to_string(const std::vector<int64_t>& t) {
    std::string s = "[";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(t[i]);
    }
    return s + "]";
}

} // namespace

SimplicialMesh read_simplicial(const std::filesystem::path& node_path,
                               const std::filesystem::path& ele_path) {
    SimplicialMesh mesh;
    const std::string nfile = node_path.string();
    const auto nlines = read_token_lines(node_path);
    if (nlines.empty()) throw ParseError(nfile, 1, "missing node header");

    const auto& nh = nlines[0];
    if (nh.tokens.size() < 2) throw ParseError(nfile, nh.line, "node header needs 'count dim 0 0'");
    const int64_t node_count = parse_int(nfile, nh.line, nh.tokens[0]);
    const int64_t node_dim = parse_int(nfile, nh.line, nh.tokens[1]);
    if (node_dim != 2 && node_dim != 3)
        throw ParseError(nfile, nh.line, "node dimension must be 2 or 3");
    if (node_count < 0 || static_cast<size_t>(node_count) != nlines.size() - 1)
        throw ParseError(nfile, nlines.back().line,
                         "header promises " + std::to_string(node_count) + " nodes, file has " +
                             std::to_string(nlines.size() - 1));

    for (size_t i = 1; i < nlines.size(); ++i) {
        const auto& nt = nlines[i];
        if (nt.tokens.size() < static_cast<size_t>(1 + node_dim))
            throw ParseError(nfile, nt.line, "node line needs 'id x y" +
                                                 std::string(node_dim == 3 ? " z'" : "'"));
        const int64_t id = parse_int(nfile, nt.line, nt.tokens[0]);
        std::array<double, 3> c{0, 0, 0};
        for (int a = 0; a < node_dim; ++a)
            c[static_cast<size_t>(a)] = parse_double(nfile, nt.line, nt.tokens[static_cast<size_t>(a) + 1]);
        if (!mesh.coords.emplace(id, c).second)
            throw ParseError(nfile, nt.line, "duplicate node id " + std::to_string(id));
    }

    const std::string efile = ele_path.string();
    const auto elines = read_token_lines(ele_path);
    if (elines.empty()) throw ParseError(efile, 1, "missing element header");

    const auto& eh = elines[0];
    if (eh.tokens.size() < 2) throw ParseError(efile, eh.line, "element header needs 'count arity 0'");
    const int64_t cell_count = parse_int(efile, eh.line, eh.tokens[0]);
    const int64_t arity = parse_int(efile, eh.line, eh.tokens[1]);
    switch (arity) {
        case 3: mesh.kind = ModelKind::Simplex2; break;
        case 4: mesh.kind = ModelKind::Simplex3; break;
        case 5: mesh.kind = ModelKind::Simplex4; break;
        default:
            throw ParseError(efile, eh.line,
                             "cells per line must have 3, 4 or 5 vertices, not " +
                                 std::to_string(arity));
    }
    if (cell_count < 0 || static_cast<size_t>(cell_count) != elines.size() - 1)
        throw ParseError(efile, elines.back().line,
                         "header promises " + std::to_string(cell_count) + " cells, file has " +
                             std::to_string(elines.size() - 1));

    std::set<std::vector<int64_t>> seen;
    for (size_t i = 1; i < elines.size(); ++i) {
        const auto& et = elines[i];
        if (et.tokens.size() < static_cast<size_t>(1 + arity))
            throw ParseError(efile, et.line,
                             "cell line needs an id and " + std::to_string(arity) + " vertices");
        std::vector<int64_t> cell;
        for (int64_t a = 0; a < arity; ++a) {
            const int64_t v = parse_int(efile, et.line, et.tokens[static_cast<size_t>(a) + 1]);
            if (!mesh.coords.contains(v))
                throw ParseError(efile, et.line, "unknown vertex id " + std::to_string(v));
            cell.push_back(v);
        }
        std::sort(cell.begin(), cell.end());
        if (std::adjacent_find(cell.begin(), cell.end()) != cell.end())
            throw ParseError(efile, et.line, "cell repeats a vertex");
        if (!seen.insert(cell).second)
            throw ParseError(efile, et.line, "duplicate cell " + tuple_to_string(cell));
        mesh.cells.push_back(std::move(cell));
    }
    return mesh;
}

size_t VoxelImage::cell_count() const {
    return static_cast<size_t>(std::count(values.begin(), values.end(), uint8_t{1}));
}

VoxelImage read_voxels(const std::filesystem::path& path) {
    const std::string file = path.string();
    const auto lines = read_token_lines(path);
    if (lines.empty()) throw ParseError(file, 1, "missing VOX header");

    const auto& h = lines[0];
    if (h.tokens.size() != 4 || h.tokens[0] != "VOX")
        throw ParseError(file, h.line, "expected header 'VOX nx ny nz'");
    VoxelImage img;
    img.nx = static_cast<int>(parse_int(file, h.line, h.tokens[1]));
    img.ny = static_cast<int>(parse_int(file, h.line, h.tokens[2]));
    img.nz = static_cast<int>(parse_int(file, h.line, h.tokens[3]));
    if (img.nx < 1 || img.ny < 1 || img.nz < 1)
        throw ParseError(file, h.line, "grid dimensions must be positive");
    img.kind = img.nz == 1 ? ModelKind::Cube2 : ModelKind::Cube3;

    const size_t expected = static_cast<size_t>(img.nx) * img.ny * img.nz;
    img.values.reserve(expected);
    for (size_t i = 1; i < lines.size(); ++i) {
        for (const std::string& tok : lines[i].tokens) {
            if (tok != "0" && tok != "1")
                throw ParseError(file, lines[i].line, "voxel value must be 0 or 1, found '" + tok + "'");
            if (img.values.size() == expected)
                throw ParseError(file, lines[i].line, "more values than the header promises");
            img.values.push_back(tok == "1" ? 1 : 0);
        }
    }
    if (img.values.size() != expected)
        throw ParseError(file, lines.empty() ? 1 : lines.back().line,
                         "header promises " + std::to_string(expected) + " values, file has " +
                             std::to_string(img.values.size()));
    return img;
}

void write_skeleton(const ThinningOutcome& outcome, const std::filesystem::path& path) {
    if (outcome.stats.initial_count > 0 && outcome.kept.empty())
        throw InvariantViolation("refusing to write an empty skeleton for a nonempty input");

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw UsageError("cannot write skeleton file: " + path.string());
    out << "# skeleton: kept " << outcome.kept.size() << " of " << outcome.stats.initial_count
        << " cells, passes " << outcome.passes << "\n";
    for (const auto& [cell, pass] : outcome.removed_order)
        out << "# removed " << cell << " pass " << pass << "\n";
    for (CellId t : outcome.kept) out << t << "\n";
    if (!out) throw UsageError("cannot write skeleton file: " + path.string());
}

std::vector<CellId> read_skeleton(const std::filesystem::path& path) {
    const std::string file = path.string();
    std::vector<CellId> kept;
    for (const auto& nt : read_token_lines(path)) {
        if (nt.tokens.size() != 1)
            throw ParseError(file, nt.line, "expected one cell id per line");
        kept.push_back(static_cast<CellId>(parse_int(file, nt.line, nt.tokens[0])));
    }
    return kept;
}

std::vector<std::vector<int64_t>> read_simplicial_anchors(const std::filesystem::path& path,
                                                          ModelKind kind) {
    const std::string file = path.string();
    const size_t face_arity = static_cast<size_t>(model_vertex_count(kind)) - 1;
    std::vector<std::vector<int64_t>> anchors;
    for (const auto& nt : read_token_lines(path)) {
        if (nt.tokens.size() != face_arity)
            throw ParseError(file, nt.line,
                             "anchor face needs " + std::to_string(face_arity) + " vertex ids");
        std::vector<int64_t> face;
        for (const std::string& tok : nt.tokens) face.push_back(parse_int(file, nt.line, tok));
        std::sort(face.begin(), face.end());
        anchors.push_back(std::move(face));
    }
    return anchors;
}

std::vector<LatticeFaceKey> read_lattice_anchors(const std::filesystem::path& path) {
    const std::string file = path.string();
    std::vector<LatticeFaceKey> anchors;
    for (const auto& nt : read_token_lines(path)) {
        if (nt.tokens.size() != 4)
            throw ParseError(file, nt.line, "anchor face needs 'axis x y z'");
        LatticeFaceKey key;
        key.axis = static_cast<int>(parse_int(file, nt.line, nt.tokens[0]));
        for (int a = 0; a < 3; ++a)
            key.min_corner[static_cast<size_t>(a)] =
                static_cast<int>(parse_int(file, nt.line, nt.tokens[static_cast<size_t>(a) + 1]));
        anchors.push_back(key);
    }
    return anchors;
}

void write_vtk(const TopCellComplex& x, const std::vector<CellId>& kept,
               const std::filesystem::path& path,
               const std::unordered_map<int64_t, std::array<double, 3>>* coords) {
    int cell_type = 0;
    switch (x.kind()) {
        case ModelKind::Simplex2: cell_type = 5; break;   // VTK_TRIANGLE
        case ModelKind::Simplex3: cell_type = 10; break;  // VTK_TETRA
        case ModelKind::Cube2: cell_type = 9; break;      // VTK_QUAD
        case ModelKind::Cube3: cell_type = 12; break;     // VTK_HEXAHEDRON
        case ModelKind::Simplex4:
            throw UsageError("VTK export does not support 4-dimensional cells");
    }

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw UsageError("cannot write VTK file: " + path.string());
    out << "# vtk DataFile Version 3.0\n"
        << "thinned complex\n"
        << "ASCII\n"
        << "DATASET UNSTRUCTURED_GRID\n";

    const CellId n_cells = x.cell_count();
    std::vector<std::vector<int>> cell_points(static_cast<size_t>(n_cells));

    if (x.cubical()) {
        const ModelCell& model = ModelCell::get(x.kind());
        // reorder our corner labels into VTK vertex cycles
        const std::vector<int> vtk_order = x.kind() == ModelKind::Cube2
                                               ? std::vector<int>{0, 1, 3, 2}
                                               : std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7};
        std::map<std::array<int, 3>, int> point_ids;
        for (CellId t = 0; t < n_cells; ++t) {
            const auto& base = x.cubical_cells()[static_cast<size_t>(t)];
            for (int label : vtk_order) {
                const auto off = model.corner_offset(label);
                const std::array<int, 3> p{base[0] + off[0], base[1] + off[1], base[2] + off[2]};
                auto [it, fresh] = point_ids.emplace(p, static_cast<int>(point_ids.size()));
                cell_points[static_cast<size_t>(t)].push_back(it->second);
            }
        }
        out << "POINTS " << point_ids.size() << " double\n";
        std::vector<std::array<int, 3>> pts(point_ids.size());
        for (const auto& [p, id] : point_ids) pts[static_cast<size_t>(id)] = p;
        for (const auto& p : pts) out << p[0] << " " << p[1] << " " << p[2] << "\n";
    } else {
        if (coords == nullptr)
            throw UsageError("VTK export of a mesh needs vertex coordinates");
        std::map<int64_t, int> point_ids;
        for (CellId t = 0; t < n_cells; ++t)
            for (int64_t v : x.simplicial_cells()[static_cast<size_t>(t)]) {
                auto [it, fresh] = point_ids.emplace(v, static_cast<int>(point_ids.size()));
                cell_points[static_cast<size_t>(t)].push_back(it->second);
            }
        out << "POINTS " << point_ids.size() << " double\n";
        std::vector<int64_t> pts(point_ids.size());
        for (const auto& [v, id] : point_ids) pts[static_cast<size_t>(id)] = v;
        for (int64_t v : pts) {
            const auto it = coords->find(v);
            if (it == coords->end())
                throw UsageError("no coordinates for vertex " + std::to_string(v));
            out << it->second[0] << " " << it->second[1] << " " << it->second[2] << "\n";
        }
    }

    size_t entry_count = 0;
    for (const auto& cp : cell_points) entry_count += cp.size() + 1;
    out << "CELLS " << n_cells << " " << entry_count << "\n";
    for (const auto& cp : cell_points) {
        out << cp.size();
        for (int p : cp) out << " " << p;
        out << "\n";
    }
    out << "CELL_TYPES " << n_cells << "\n";
    for (CellId t = 0; t < n_cells; ++t) out << cell_type << "\n";

    std::vector<uint8_t> kept_flag(static_cast<size_t>(n_cells), 0);
    for (CellId t : kept) kept_flag.at(static_cast<size_t>(t)) = 1;
    out << "CELL_DATA " << n_cells << "\n"
        << "SCALARS kept int 1\n"
        << "LOOKUP_TABLE default\n";
    for (uint8_t f : kept_flag) out << int{f} << "\n";
    if (!out) throw UsageError("cannot write VTK file: " + path.string());
}

} // namespace thincc

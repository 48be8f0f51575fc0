// thincc: thin simplicial meshes and voxel/pixel images down to
// homology-equivalent skeletons, and manage the acyclicity tables the
// simplicity test runs on.
//
// Exit codes: 0 success / certified, 1 bad usage, 2 unreadable input,
// 3 certification failed, 4 internal invariant violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "thincc/acyclicity.hpp"
#include "thincc/io.hpp"
#include "thincc/thinning.hpp"
#include "thincc/verify.hpp"

namespace fs = std::filesystem;
using namespace thincc;

namespace {

std::string vec_to_string(const std::vector<int>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

ModelKind parse_kind(const std::string& name) {
    if (auto k = kind_from_name(name)) return *k;
    throw UsageError("unknown model '" + name + "' (expected tri, tet, simp4, pixel or voxel)");
}

std::pair<fs::path, fs::path> split_mesh_arg(const std::string& arg) {
    const auto comma = arg.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == arg.size())
        throw UsageError("--mesh expects 'NODES.node,CELLS.ele'");
    return {arg.substr(0, comma), arg.substr(comma + 1)};
}

fs::path table_cache_dir() {
    if (const char* dir = std::getenv("THINCC_CACHE_DIR")) return dir;
    if (const char* home = std::getenv("HOME")) return fs::path(home) / ".cache" / "thincc";
    return fs::path(".thincc-cache");
}

// Everything thin/verify/info need to know about an input, either backend.
struct LoadedInput {
    std::unique_ptr<SimplicialMesh> mesh;  // set for --mesh
    std::unique_ptr<VoxelImage> image;     // set for --voxels
    ModelKind kind{};

    TopCellComplex build(const std::string& anchors_path) const {
        if (mesh) {
            std::vector<std::vector<int64_t>> anchors;
            if (!anchors_path.empty()) anchors = read_simplicial_anchors(anchors_path, kind);
            return TopCellComplex::build_simplicial(kind, mesh->cells, std::move(anchors));
        }
        std::vector<LatticeFaceKey> anchors;
        if (!anchors_path.empty()) anchors = read_lattice_anchors(anchors_path);
        return TopCellComplex::build_cubical(kind, image->nx, image->ny, image->nz, image->values,
                                             std::move(anchors));
    }
};

LoadedInput load_input(const std::string& mesh_arg, const std::string& voxel_arg) {
    if (mesh_arg.empty() == voxel_arg.empty())
        throw UsageError("give exactly one input: --mesh NODES,ELE or --voxels FILE");
    LoadedInput in;
    if (!mesh_arg.empty()) {
        const auto [node_path, ele_path] = split_mesh_arg(mesh_arg);
        in.mesh = std::make_unique<SimplicialMesh>(read_simplicial(node_path, ele_path));
        in.kind = in.mesh->kind;
    } else {
        in.image = std::make_unique<VoxelImage>(read_voxels(voxel_arg));
        in.kind = in.image->kind;
    }
    return in;
}

// Table resolution for `thin`: an explicit file, or the cache (generated on
// miss), or the memoizing oracle for the 2^30-entry 4-simplex case.
struct OracleHolder {
    std::unique_ptr<AcyclicityTable> table;
    std::unique_ptr<LazyAcyclicityOracle> lazy;

    const AcyclicityOracle& get() const { return table ? static_cast<const AcyclicityOracle&>(*table) : *lazy; }
};

OracleHolder resolve_oracle(const std::string& table_path, bool auto_table, ModelKind kind,
                            int jobs) {
    OracleHolder h;
    if (!table_path.empty()) {
        h.table = std::make_unique<AcyclicityTable>(load_table(table_path));
        return h;
    }
    if (!auto_table)
        throw UsageError("no acyclicity table: pass --table FILE or --auto-table");
    if (kind == ModelKind::Simplex4) {
        h.lazy = std::make_unique<LazyAcyclicityOracle>(kind);
        return h;
    }
    const fs::path dir = table_cache_dir();
    const fs::path cached = dir / (std::string(kind_name(kind)) + "-v1.acy");
    if (fs::exists(cached)) {
        try {
            h.table = std::make_unique<AcyclicityTable>(load_table(cached));
            return h;
        } catch (const CorruptTableError& e) {
            std::cerr << "regenerating cached table " << cached.string() << ": " << e.what()
                      << "\n";
        }
    }
    fs::create_directories(dir);
    h.table = std::make_unique<AcyclicityTable>(generate_table(kind, jobs));
    save_table(*h.table, cached);
    return h;
}

int run_gen_tables(const std::string& model, const std::string& out, bool eager, int jobs) {
    const ModelKind kind = parse_kind(model);
    const AcyclicityTable table = generate_table(kind, jobs, eager);
    save_table(table, out);
    std::cout << "model = " << kind_name(kind) << "\n"
              << "bits = " << table.bit_count() << "\n"
              << "acyclic_configurations = " << table.set_bit_count() << "\n"
              << "written = " << out << "\n";
    return 0;
}

int run_table_stats(const std::string& path, bool euler_report, bool collapse_audit) {
    const AcyclicityTable table = load_table(path);
    const ModelKind kind = table.kind();
    uint64_t closed = 0;
    enumerate_closed_configs(kind, [&](ConfigMask) { ++closed; });
    std::cout << "model = " << kind_name(kind) << "\n"
              << "elements = " << boundary_element_count(kind) << "\n"
              << "bits = " << table.bit_count() << "\n"
              << "closed_configurations = " << closed << "\n"
              << "acyclic_configurations = " << table.set_bit_count() << "\n";
    if (euler_report) {
        const EulerReport rep = analyze_euler_claims(kind);
        std::cout << "euler_only_false_positives = " << rep.euler_only_false_positives << "\n"
                  << "euler_plus_connected_false_positives = "
                  << rep.euler_plus_connected_false_positives << "\n";
    }
    if (collapse_audit) {
        const CollapseReport rep = audit_collapsibility(kind);
        std::cout << "collapse_audited = " << rep.audited << "\n"
                  << "collapse_failures = " << rep.failures.size() << "\n";
        for (ConfigMask m : rep.failures)
            std::cout << "collapse_failure_index = " << m << "\n";
    }
    return 0;
}

int run_thin(const std::string& mesh_arg, const std::string& voxel_arg,
             const std::string& table_path, bool auto_table, const std::string& algorithm,
             const std::string& anchors_path, const std::string& out_path,
             const std::string& vtk_path, bool do_certify, bool debug_mv, int jobs) {
    ThinningMode mode;
    if (algorithm == "topo")
        mode = ThinningMode::Topology;
    else if (algorithm == "shape")
        mode = ThinningMode::Shape;
    else
        throw UsageError("--algorithm must be 'topo' or 'shape'");

    const LoadedInput input = load_input(mesh_arg, voxel_arg);
    TopCellComplex complex = input.build(anchors_path);
    const OracleHolder oracle = resolve_oracle(table_path, auto_table, input.kind, jobs);

    RemovalHook hook;
    std::vector<int> base_betti;
    if (debug_mv) {
        if (complex.cell_count() > 500)
            throw UsageError("--debug-mv recomputes homology per removal; limited to 500 cells, "
                             "input has " + std::to_string(complex.cell_count()));
        const CertificationReport base = certify_outcome(complex, {});
        base_betti = base.betti_in;
        hook = [&complex, base_betti](CellId t) {
            std::vector<CellId> alive;
            for (CellId c = 0; c < complex.cell_count(); ++c)
                if (complex.is_alive(c)) alive.push_back(c);
            const CertificationReport now = certify_outcome(complex, alive);
            if (now.betti_out != base_betti || !now.torsion_free_out)
                throw InvariantViolation("removing cell " + std::to_string(t) +
                                         " changed homology " + vec_to_string(base_betti) +
                                         " -> " + vec_to_string(now.betti_out));
        };
    }

    const ThinningOutcome outcome = thin_anchored(complex, oracle.get(), mode, hook);
    std::cout << "cells = " << outcome.stats.initial_count << "\n"
              << "kept = " << outcome.stats.kept_count << "\n"
              << "passes = " << outcome.passes << "\n"
              << "queue_pushes = " << outcome.stats.queue_pushes << "\n";

    write_skeleton(outcome, out_path);
    std::cout << "skeleton = " << out_path << "\n";
    if (!vtk_path.empty()) {
        write_vtk(complex, outcome.kept, vtk_path, input.mesh ? &input.mesh->coords : nullptr);
        std::cout << "vtk = " << vtk_path << "\n";
    }

    if (do_certify) {
        const CertificationReport rep = certify_outcome(complex, outcome.kept);
        std::cout << "betti_in = " << vec_to_string(rep.betti_in) << "\n"
                  << "betti_out = " << vec_to_string(rep.betti_out) << "\n"
                  << "verdict = " << (rep.isomorphic ? "isomorphic" : "NOT isomorphic") << "\n";
        if (!rep.isomorphic) return 3;
    }
    return 0;
}

int run_verify(const std::string& mesh_arg, const std::string& voxel_arg,
               const std::string& skeleton_path) {
    const LoadedInput input = load_input(mesh_arg, voxel_arg);
    const TopCellComplex complex = input.build("");
    const std::vector<CellId> kept = read_skeleton(skeleton_path);
    for (CellId t : kept)
        if (t < 0 || t >= complex.cell_count())
            throw UsageError("skeleton cell id " + std::to_string(t) +
                             " is outside the input's 0.." +
                             std::to_string(complex.cell_count() - 1) + " range");

    const CertificationReport rep = certify_outcome(complex, kept);
    std::cout << "betti_in = " << vec_to_string(rep.betti_in) << "\n"
              << "betti_out = " << vec_to_string(rep.betti_out) << "\n"
              << "torsion_free_in = " << (rep.torsion_free_in ? "yes" : "no") << "\n"
              << "torsion_free_out = " << (rep.torsion_free_out ? "yes" : "no") << "\n"
              << "verdict = " << (rep.isomorphic ? "isomorphic" : "NOT isomorphic") << "\n";
    return rep.isomorphic ? 0 : 3;
}

int run_info(const std::string& mesh_arg, const std::string& voxel_arg) {
    const LoadedInput input = load_input(mesh_arg, voxel_arg);
    const TopCellComplex complex = input.build("");
    const FacetStats facet = complex.facet_stats();

    std::vector<int64_t> counts = complex.cubical()
                                      ? face_counts(complex.kind(), complex.cubical_cells())
                                      : face_counts(complex.kind(), complex.simplicial_cells());
    int64_t chi = 0;
    std::string counts_str = "(";
    for (size_t d = 0; d < counts.size(); ++d) {
        chi += d % 2 == 0 ? counts[d] : -counts[d];
        if (d) counts_str += ',';
        counts_str += std::to_string(counts[d]);
    }
    counts_str += ")";

    std::cout << "kind = " << kind_name(complex.kind()) << "\n"
              << "cells = " << complex.cell_count() << "\n"
              << "cells_by_dim = " << counts_str << "\n"
              << "facets = " << facet.total << "\n"
              << "boundary_facets = " << facet.boundary << "\n"
              << "shared_facets = " << facet.shared << "\n"
              << "nonmanifold_facets = " << facet.nonmanifold << "\n"
              << "euler_characteristic = " << chi << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homology-preserving thinning of simplicial and cubical complexes"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen-tables", "generate an acyclicity table");
    std::string gen_model, gen_out;
    bool gen_eager = false;
    int gen_jobs = 1;
    gen->add_option("--model", gen_model, "tri, tet, simp4, pixel or voxel")->required();
    gen->add_option("--out", gen_out, "output table file")->required();
    gen->add_flag("--eager", gen_eager, "allow the 2^30-bit eager simp4 table");
    gen->add_option("--jobs", gen_jobs, "worker threads (result is identical)");

    auto* stats = app.add_subcommand("table-stats", "inspect a table file");
    std::string stats_table;
    bool stats_euler = false, stats_collapse = false;
    stats->add_option("--table", stats_table, "table file")->required();
    stats->add_flag("--euler-report", stats_euler, "count Euler-test false positives");
    stats->add_flag("--collapse-audit", stats_collapse,
                    "check every acyclic configuration collapses to a point");

    auto* thin = app.add_subcommand("thin", "thin an input down to a skeleton");
    std::string thin_mesh, thin_vox, thin_table, thin_algorithm, thin_anchors, thin_out, thin_vtk;
    bool thin_auto = false, thin_certify = false, thin_mv = false;
    int thin_jobs = 1;
    thin->add_option("--mesh", thin_mesh, "NODES.node,CELLS.ele");
    thin->add_option("--voxels", thin_vox, "VOX occupancy grid");
    thin->add_option("--table", thin_table, "acyclicity table file");
    thin->add_flag("--auto-table", thin_auto, "generate/serve the table from the cache dir");
    thin->add_option("--algorithm", thin_algorithm, "topo or shape")->required();
    thin->add_option("--anchors", thin_anchors, "boundary faces the skeleton must stay attached to");
    thin->add_option("--out", thin_out, "skeleton id file")->required();
    thin->add_option("--vtk", thin_vtk, "also export a VTK file with a 'kept' cell scalar");
    thin->add_flag("--certify", thin_certify, "verify Betti numbers are preserved");
    thin->add_flag("--debug-mv", thin_mv, "recompute homology after every removal (<= 500 cells)");
    thin->add_option("--jobs", thin_jobs, "worker threads for --auto-table generation");

    auto* verify = app.add_subcommand("verify", "certify a skeleton against its input");
    std::string verify_mesh, verify_vox, verify_skeleton;
    verify->add_option("--mesh", verify_mesh, "NODES.node,CELLS.ele");
    verify->add_option("--voxels", verify_vox, "VOX occupancy grid");
    verify->add_option("--skeleton", verify_skeleton, "kept cell ids")->required();

    auto* info = app.add_subcommand("info", "print complex statistics");
    std::string info_mesh, info_vox;
    info->add_option("--mesh", info_mesh, "NODES.node,CELLS.ele");
    info->add_option("--voxels", info_vox, "VOX occupancy grid");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen_tables(gen_model, gen_out, gen_eager, gen_jobs);
        if (stats->parsed()) return run_table_stats(stats_table, stats_euler, stats_collapse);
        if (thin->parsed())
            return run_thin(thin_mesh, thin_vox, thin_table, thin_auto, thin_algorithm,
                            thin_anchors, thin_out, thin_vtk, thin_certify, thin_mv, thin_jobs);
        if (verify->parsed()) return run_verify(verify_mesh, verify_vox, verify_skeleton);
        if (info->parsed()) return run_info(info_mesh, info_vox);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const KindMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CorruptTableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

#include "gpdo/io.hpp"

#include "gpdo/error.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

namespace gpdo {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

template <class T>
void take(const json& obj, const char* key, T& into)
{
    if (!obj.contains(key)) return;
    try {
        into = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ifstream open_in(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    return in;
}

json read_json(const fs::path& path)
{
    try {
        return json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

json duals_json(const Model& model)
{
    json out = json::array();
    for (const auto& d : model.duals()) {
        json j{{"index", d.index}, {"weight", d.weight}, {"dim", model.dim(d.index)}};
        if (d.backend == Backend::cyclic) j["character"] = d.character;
        else j["sign"] = d.sign;
        out.push_back(j);
    }
    return out;
}

void check_manifest_grid(const json& manifest, const Model& model)
{
    if (json::parse(grid_config_json(model.config())) != manifest.at("grid"))
        throw GridMismatch("stored grid differs from the model grid");
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    RunConfig out;
    out.source_text = text;
    std::string backend = "affine";
    take(doc, "backend", backend);
    const json grid = doc.contains("grid") ? doc.at("grid") : json::object();
    if (!grid.is_object()) throw ConfigError("config 'grid' must be an object");
    take(grid, "backend", backend);
    try {
        out.grid.backend = backend_from_string(backend);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    take(grid, "N", out.grid.n);
    take(grid, "h_b", out.grid.h_b);
    take(grid, "r", out.grid.r);
    take(grid, "b_halfwidth", out.grid.b_halfwidth);
    take(grid, "j_min", out.grid.j_min);
    take(grid, "j_max", out.grid.j_max);
    take(grid, "s_top", out.grid.s_top);
    take(grid, "s_nodes", out.grid.s_nodes);
    take(grid, "lattice_ny", out.grid.lattice_ny);
    take(grid, "lattice_nx", out.grid.lattice_nx);
    out.grid.validate();

    if (doc.contains("tolerances")) {
        const auto& tol = doc.at("tolerances");
        if (!tol.is_object()) throw ConfigError("config 'tolerances' must be an object");
        for (auto it = tol.begin(); it != tol.end(); ++it) {
            if (!it->is_number() || !(it->get<double>() > 0.0))
                throw ConfigError("tolerance '" + it.key() + "' must be a positive number");
            out.tolerances[it.key()] = it->get<double>();
        }
    }
    take(doc, "seed", out.seed);
    return out;
}

RunConfig load_config(const fs::path& path)
{
    if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
    return parse_config(slurp(path));
}

std::string grid_config_json(const GridConfig& c)
{
    json j{{"backend", std::string(to_string(c.backend))}, {"refinement_level", c.refinement_level}};
    if (c.backend == Backend::cyclic) {
        j["N"] = c.n;
    } else {
        j["h_b"] = c.h_b;
        j["r"] = c.r;
        j["b_halfwidth"] = c.b_halfwidth;
        j["j_min"] = c.j_min;
        j["j_max"] = c.j_max;
        j["s_top"] = c.s_top;
        j["s_nodes"] = c.s_nodes;
        j["lattice_ny"] = c.lattice_ny;
        j["lattice_nx"] = c.lattice_nx;
    }
    return j.dump();
}

void write_atomic(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw ConfigError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

void write_csv(std::ostream& out, const RepOperator& T)
{
    out << std::setprecision(17) << "row,col,re,im\n";
    for (Eigen::Index i = 0; i < T.rows(); ++i)
        for (Eigen::Index j = 0; j < T.cols(); ++j)
            if (T(i, j) != 0.0) out << i << ',' << j << ',' << T(i, j).real() << ',' << T(i, j).imag() << '\n';
}

RepOperator read_rep_csv(std::istream& in, Eigen::Index dim)
{
    RepOperator T = RepOperator::Zero(dim, dim);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty operator CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell[4];
        for (auto& c : cell)
            if (!std::getline(ss, c, ',')) throw ConfigError("malformed operator CSV row: " + line);
        const auto i = std::stol(cell[0]);
        const auto j = std::stol(cell[1]);
        if (i < 0 || j < 0 || i >= dim || j >= dim) throw GridMismatch("operator CSV index out of range");
        T(i, j) = cplx(std::stod(cell[2]), std::stod(cell[3]));
    }
    return T;
}

void write_field(const fs::path& dir, const OperatorField& F)
{
    fs::create_directories(dir);
    for (std::size_t xi = 0; xi < F.blocks.size(); ++xi) {
        std::ostringstream ss;
        write_csv(ss, F.blocks[xi]);
        write_atomic(dir / ("dual_" + std::to_string(xi) + ".csv"), ss.str());
    }
    json manifest{{"grid", json::parse(grid_config_json(F.model->config()))}, {"duals", duals_json(*F.model)}};
    write_atomic(dir / "manifest.json", manifest.dump(2));
}

OperatorField read_field(const fs::path& dir, const ModelPtr& model)
{
    check_manifest_grid(read_json(dir / "manifest.json"), *model);
    OperatorField out{model, {}};
    for (std::size_t xi = 0; xi < model->dual_size(); ++xi) {
        auto in = open_in(dir / ("dual_" + std::to_string(xi) + ".csv"));
        out.blocks.push_back(read_rep_csv(in, static_cast<Eigen::Index>(model->dim(xi))));
    }
    return out;
}

void write_symbol(const fs::path& dir, const Symbol& A)
{
    fs::create_directories(dir);
    const auto& model = *A.model();
    json nodes = json::array();
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (!A.nonzero(i)) continue;
        nodes.push_back(i);
        for (std::size_t xi = 0; xi < model.dual_size(); ++xi) {
            std::ostringstream ss;
            write_csv(ss, A.at(i)[xi]);
            write_atomic(dir / ("node_" + std::to_string(i) + "_dual_" + std::to_string(xi) + ".csv"), ss.str());
        }
    }
    json manifest{{"grid", json::parse(grid_config_json(model.config()))},
                  {"duals", duals_json(model)},
                  {"nodes", nodes}};
    write_atomic(dir / "manifest.json", manifest.dump(2));
}

Symbol read_symbol(const fs::path& dir, const ModelPtr& model)
{
    const json manifest = read_json(dir / "manifest.json");
    check_manifest_grid(manifest, *model);
    Symbol out(model);
    for (const auto& node : manifest.at("nodes")) {
        const auto i = node.get<std::size_t>();
        if (i >= out.size()) throw GridMismatch("stored node index out of range");
        Blocks blocks;
        for (std::size_t xi = 0; xi < model->dual_size(); ++xi) {
            auto in = open_in(dir / ("node_" + std::to_string(i) + "_dual_" + std::to_string(xi) + ".csv"));
            blocks.push_back(read_rep_csv(in, static_cast<Eigen::Index>(model->dim(xi))));
        }
        out.set(i, std::move(blocks));
    }
    return out;
}

void write_scalar_symbol(const fs::path& dir, const ScalarSymbol& B)
{
    fs::create_directories(dir);
    const auto& lat = B.lattice();
    const auto& grid = B.model()->grid();
    json manifest{{"grid", json::parse(grid_config_json(B.model()->config()))},
                  {"n_eta", lat.n_eta()},
                  {"n_chi", lat.n_chi()},
                  {"d_eta", lat.d_eta()},
                  {"d_chi", lat.d_chi()},
                  {"measure", lat.measure()},
                  {"measure_convention", "d_eta d_chi / (2 pi)^2"}};
    write_atomic(dir / "lattice.json", manifest.dump(2));

    std::ostringstream ss;
    ss << std::setprecision(17) << "b,a,eta,chi,re,im\n";
    for (std::size_t i = 0; i < B.size(); ++i) {
        if (!B.nonzero(i)) continue;
        const auto x = grid.node(i);
        const auto& w = B.at(i);
        for (int m = 0; m < lat.n_eta(); ++m)
            for (int n = 0; n < lat.n_chi(); ++n)
                ss << x.b << ',' << x.a << ',' << lat.eta(m) << ',' << lat.chi(n) << ',' << w(m, n).real() << ','
                   << w(m, n).imag() << '\n';
    }
    write_atomic(dir / "symbol.csv", ss.str());
}

} // namespace gpdo

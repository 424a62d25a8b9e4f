#include "nullgeo/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nullgeo {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void expect(std::istream& in, const std::string& token) {
    std::string got;
    in >> got;
    if (got != token)
        throw std::invalid_argument("expected '" + token + "', got '" + got + "'");
}

nlohmann::json spec_to_json(const MeshSpec& spec) {
    nlohmann::json j;
    j["kind"] = spec.kind == MeshKind::CartesianDisk ? "cartesian" : "polar";
    j["level"] = spec.level;
    j["h0"] = spec.h0;
    j["breakpoints"] = spec.breakpoints;
    return j;
}

MeshSpec spec_from_json(const nlohmann::json& j) {
    MeshSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cartesian")
        spec.kind = MeshKind::CartesianDisk;
    else if (kind == "polar")
        spec.kind = MeshKind::PolarDisk;
    else
        throw std::invalid_argument("unknown mesh kind " + kind);
    spec.level = j.at("level").get<int>();
    spec.h0 = j.at("h0").get<double>();
    spec.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    return spec;
}

}  // namespace

std::string mesh_to_text(const SpatialMesh& mesh) {
    std::string out = "nullgeo-mesh 1\n";
    out += std::string("kind ") + (mesh.spec.kind == MeshKind::CartesianDisk ? "cartesian" : "polar");
    out += "\nlevel " + std::to_string(mesh.spec.level);
    out += "\nh0 " + format_double(mesh.spec.h0);
    out += "\nbreakpoints " + std::to_string(mesh.spec.breakpoints.size());
    for (double b : mesh.spec.breakpoints) out += " " + format_double(b);
    out += "\nspacing " + format_double(mesh.target_spacing);
    out += "\nvertices " + std::to_string(mesh.vertex_count()) + "\n";
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        out += format_double(mesh.coords[2 * v]) + " " + format_double(mesh.coords[2 * v + 1]);
        out += " " + format_double(mesh.radial[v]) + " " + format_double(mesh.cell_weights[v]);
        out += mesh.is_boundary[v] ? " 1\n" : " 0\n";
    }
    out += "edges " + std::to_string(mesh.edges.size()) + "\n";
    for (auto& e : mesh.edges) out += std::to_string(e[0]) + " " + std::to_string(e[1]) + "\n";
    out += "boundary_edges " + std::to_string(mesh.boundary_edges.size()) + "\n";
    for (auto& e : mesh.boundary_edges)
        out += std::to_string(e[0]) + " " + std::to_string(e[1]) + "\n";
    out += "end\n";
    return out;
}

SpatialMesh mesh_from_text(const std::string& text) {
    std::istringstream in(text);
    expect(in, "nullgeo-mesh");
    expect(in, "1");
    SpatialMesh mesh;
    std::string kind;
    expect(in, "kind");
    in >> kind;
    if (kind == "cartesian")
        mesh.spec.kind = MeshKind::CartesianDisk;
    else if (kind == "polar")
        mesh.spec.kind = MeshKind::PolarDisk;
    else
        throw std::invalid_argument("unknown mesh kind " + kind);
    expect(in, "level");
    in >> mesh.spec.level;
    expect(in, "h0");
    in >> mesh.spec.h0;
    expect(in, "breakpoints");
    std::size_t nb;
    in >> nb;
    mesh.spec.breakpoints.resize(nb);
    for (auto& b : mesh.spec.breakpoints) in >> b;
    expect(in, "spacing");
    in >> mesh.target_spacing;
    expect(in, "vertices");
    std::size_t n;
    in >> n;
    mesh.coords.resize(2 * n);
    mesh.radial.resize(n);
    mesh.cell_weights.resize(n);
    mesh.is_boundary.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        int flag;
        in >> mesh.coords[2 * v] >> mesh.coords[2 * v + 1] >> mesh.radial[v] >>
            mesh.cell_weights[v] >> flag;
        mesh.is_boundary[v] = char(flag);
        if (flag) mesh.boundary_vertices.push_back(int(v));
    }
    expect(in, "edges");
    std::size_t ne;
    in >> ne;
    mesh.edges.resize(ne);
    for (auto& e : mesh.edges) in >> e[0] >> e[1];
    expect(in, "boundary_edges");
    in >> ne;
    mesh.boundary_edges.resize(ne);
    for (auto& e : mesh.boundary_edges) in >> e[0] >> e[1];
    expect(in, "end");
    if (!in) throw std::invalid_argument("truncated mesh text");
    validate_mesh(mesh);
    return mesh;
}

std::string metric_to_text(const MetricField& field) {
    std::string out = "nullgeo-metric 1\ndim " + std::to_string(field.dim);
    out += "\nvertices " + std::to_string(field.vertex_count()) + "\n";
    const std::size_t block = std::size_t(field.dim) * field.dim;
    for (std::size_t v = 0; v < field.vertex_count(); ++v) {
        for (std::size_t k = 0; k < block; ++k) {
            out += format_double(field.values[v * block + k]);
            out += (k + 1 == block) ? "\n" : " ";
        }
    }
    out += "end\n";
    return out;
}

MetricField metric_from_text(const std::string& text) {
    std::istringstream in(text);
    expect(in, "nullgeo-metric");
    expect(in, "1");
    MetricField field;
    expect(in, "dim");
    in >> field.dim;
    expect(in, "vertices");
    std::size_t n;
    in >> n;
    field.values.resize(std::size_t(field.dim) * field.dim * n);
    for (auto& v : field.values) in >> v;
    expect(in, "end");
    if (!in) throw std::invalid_argument("truncated metric text");
    return field;
}

std::string lapse_to_text(const Lapse& lapse) {
    std::string out = "nullgeo-lapse 1\nvertices " + std::to_string(lapse.values.size()) + "\n";
    for (double h : lapse.values) out += format_double(h) + "\n";
    out += "end\n";
    return out;
}

Lapse lapse_from_text(const std::string& text) {
    std::istringstream in(text);
    expect(in, "nullgeo-lapse");
    expect(in, "1");
    Lapse lapse;
    expect(in, "vertices");
    std::size_t n;
    in >> n;
    lapse.values.resize(n);
    for (auto& h : lapse.values) in >> h;
    expect(in, "end");
    if (!in) throw std::invalid_argument("truncated lapse text");
    return lapse;
}

std::string spacetime_to_json(const StaticSpacetime& st) {
    nlohmann::json j;
    j["t0"] = st.t0;
    j["t1"] = st.t1;
    j["mesh"] = spec_to_json(st.mesh->spec);
    j["sigma"] = st.sigma.values;
    j["sigma_dim"] = st.sigma.dim;
    j["lapse"] = st.lapse.values;
    return j.dump(2) + "\n";
}

StaticSpacetime spacetime_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    StaticSpacetime st;
    st.t0 = j.at("t0").get<double>();
    st.t1 = j.at("t1").get<double>();
    st.mesh = std::make_shared<SpatialMesh>(build_mesh(spec_from_json(j.at("mesh"))));
    st.sigma.dim = j.at("sigma_dim").get<int>();
    st.sigma.values = j.at("sigma").get<std::vector<double>>();
    st.lapse.values = j.at("lapse").get<std::vector<double>>();
    validate_spacetime(st);
    return st;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace nullgeo

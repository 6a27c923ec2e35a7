#include "witness/puzzle_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace witness {

namespace {

using nlohmann::json;

Vertex vertex_from(const json& j, const char* field)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw FormatError(std::string("field '") + field + "' must be [x, y]");
    return Vertex{j[0].get<int>(), j[1].get<int>()};
}

const json& require(const json& obj, const char* field)
{
    auto it = obj.find(field);
    if (it == obj.end()) throw FormatError(std::string("missing field '") + field + "'");
    return *it;
}

int int_from(const json& j, const char* field)
{
    if (!j.is_number_integer())
        throw FormatError(std::string("field '") + field + "' must be an integer");
    return j.get<int>();
}

}  // namespace

std::string serialize_puzzle(const Puzzle& p)
{
    std::ostringstream out;
    out << "{\n";
    out << "  \"rows\": " << p.rows() << ",\n";
    out << "  \"cols\": " << p.cols() << ",\n";
    out << "  \"start\": [" << p.start().x << ", " << p.start().y << "],\n";
    out << "  \"goal\": [" << p.goal().x << ", " << p.goal().y << "],\n";
    if (p.constraints().empty()) {
        out << "  \"constraints\": []\n";
    } else {
        out << "  \"constraints\": [\n";
        for (std::size_t i = 0; i < p.constraints().size(); ++i) {
            const auto& c = p.constraints()[i];
            out << "    {\"square\": [" << c.square.cx << ", " << c.square.cy
                << "], \"triangles\": " << c.triangles << "}"
                << (i + 1 < p.constraints().size() ? ",\n" : "\n");
        }
        out << "  ]\n";
    }
    out << "}\n";
    return out.str();
}

Puzzle parse_puzzle(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed puzzle: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("puzzle must be a JSON object");

    const int rows = int_from(require(doc, "rows"), "rows");
    const int cols = int_from(require(doc, "cols"), "cols");
    const Vertex start = vertex_from(require(doc, "start"), "start");
    const Vertex goal = vertex_from(require(doc, "goal"), "goal");

    std::vector<Constraint> constraints;
    const auto& cs = require(doc, "constraints");
    if (!cs.is_array()) throw FormatError("field 'constraints' must be a list");
    for (const auto& c : cs) {
        if (!c.is_object()) throw FormatError("constraint entries must be objects");
        const Vertex sq = vertex_from(require(c, "square"), "square");
        constraints.push_back(
            Constraint{Square{sq.x, sq.y}, int_from(require(c, "triangles"), "triangles")});
    }
    return Puzzle(rows, cols, start, goal, std::move(constraints));
}

std::string read_file(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Puzzle load_puzzle(const std::filesystem::path& file)
{
    try {
        return parse_puzzle(read_file(file));
    } catch (const FormatError& e) {
        throw FormatError(file.string() + ": " + e.what());
    } catch (const InvalidPuzzle& e) {
        throw InvalidPuzzle(file.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& file, std::string_view contents)
{
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

std::vector<NamedPuzzle> load_puzzle_dir(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
        if (entry.path().filename() == "manifest.json") continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<NamedPuzzle> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back({f.stem().string(), load_puzzle(f)});
    return out;
}

std::string render_ascii(const Puzzle& p, const Path* path)
{
    BitSet used(p.edge_count());
    if (path)
        for (const auto& e : path_edges(*path)) used.set(p.edge_index(e));

    auto vertex_char = [&](Vertex v) {
        if (v == p.start()) return 'S';
        if (v == p.goal()) return 'G';
        return '+';
    };
    auto triangles = [&](int cx, int cy) {
        for (const auto& c : p.constraints())
            if (c.square == Square{cx, cy}) return static_cast<char>('0' + c.triangles);
        return ' ';
    };

    std::ostringstream out;
    for (int y = p.rows(); y >= 0; --y) {
        for (int x = 0; x <= p.cols(); ++x) {
            out << vertex_char({x, y});
            if (x < p.cols()) out << (used.test(p.edge_index(Edge{{x, y}, {x + 1, y}})) ? "###" : "---");
        }
        out << '\n';
        if (y == 0) break;
        for (int x = 0; x <= p.cols(); ++x) {
            out << (used.test(p.edge_index(Edge{{x, y - 1}, {x, y}})) ? '#' : '|');
            if (x < p.cols()) out << ' ' << triangles(x, y - 1) << ' ';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace witness

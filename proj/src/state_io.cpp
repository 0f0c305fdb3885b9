#include "photon_shaper/state_io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace photon_shaper
{
std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace
{
struct LineReader
{
    std::istream &is;
    std::size_t line_no = 0;

    std::string next(const char *what)
    {
        std::string line;
        while (std::getline(is, line))
        {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty())
                return line;
        }
        throw ValidationError(std::string("unexpected end of input, expected ") + what);
    }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ValidationError("line " + std::to_string(line_no) + ": " + msg);
    }
};

std::vector<std::string> split_commas(const std::string &line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const LineReader &r, const std::string &field)
{
    const char *begin = field.c_str();
    char *end = nullptr;
    const double v = std::strtod(begin, &end);
    if (field.empty() || end != begin + field.size())
        r.fail("not a number: \"" + field + "\"");
    return v;
}

std::size_t parse_size(const LineReader &r, const std::string &field)
{
    std::size_t v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size())
        r.fail("not a non-negative integer: \"" + field + "\"");
    return v;
}

SpectralAmplitude read_state_block(LineReader &r)
{
    const auto header = split_commas(r.next("header line n,delta_omega"));
    if (header.size() != 2)
        r.fail("header must be n,delta_omega");
    const SampledGrid grid(parse_size(r, header[0]), parse_double(r, header[1]));

    std::vector<Complex> values(grid.n_points());
    for (std::size_t j = 0; j < values.size(); ++j)
    {
        const auto row = split_commas(r.next("sample row index,re,im"));
        if (row.size() != 3)
            r.fail("sample rows must be index,re,im");
        if (parse_size(r, row[0]) != j)
            r.fail("expected sample index " + std::to_string(j));
        values[j] = Complex(parse_double(r, row[1]), parse_double(r, row[2]));
    }
    return SpectralAmplitude(grid, std::move(values));
}

} // namespace

void write_state(std::ostream &os, const SpectralAmplitude &nu)
{
    os << nu.grid().n_points() << ',' << format_number(nu.grid().delta_omega()) << '\n';
    for (std::size_t j = 0; j < nu.size(); ++j)
        os << j << ',' << format_number(nu[j].real()) << ',' << format_number(nu[j].imag()) << '\n';
}

SpectralAmplitude read_state(std::istream &is)
{
    LineReader r{is};
    auto nu = read_state_block(r);
    std::string rest;
    while (std::getline(is, rest))
    {
        ++r.line_no;
        if (rest.find_first_not_of(" \t\r") != std::string::npos)
            r.fail("trailing content after the last sample");
    }
    return nu;
}

void write_codebook(std::ostream &os, const CodeBook &book)
{
    os << book.size() << '\n';
    for (const auto &s : book.signals())
        write_state(os, s);
}

CodeBook read_codebook(std::istream &is)
{
    LineReader r{is};
    const auto count_fields = split_commas(r.next("codebook size K"));
    if (count_fields.size() != 1)
        r.fail("first codebook line must hold K");
    const std::size_t k = parse_size(r, count_fields[0]);
    if (k == 0)
        r.fail("codebook size must be positive");
    std::vector<SpectralAmplitude> signals;
    signals.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        signals.push_back(read_state_block(r));
    return CodeBook(std::move(signals));
}

namespace
{
std::ifstream open_in(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + path.string());
    return out;
}
} // namespace

void save_state(const std::filesystem::path &path, const SpectralAmplitude &nu)
{
    auto out = open_out(path);
    write_state(out, nu);
}

SpectralAmplitude load_state(const std::filesystem::path &path)
{
    auto in = open_in(path);
    return read_state(in);
}

void save_codebook(const std::filesystem::path &path, const CodeBook &book)
{
    auto out = open_out(path);
    write_codebook(out, book);
}

CodeBook load_codebook(const std::filesystem::path &path)
{
    auto in = open_in(path);
    return read_codebook(in);
}

} // namespace photon_shaper

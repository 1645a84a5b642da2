#include "plategen/render.hpp"

#include <array>
#include <cstdint>
#include <string>

#include "plategen/errors.hpp"

namespace plategen {
namespace {

using i128 = __int128;

constexpr i128 kI128Cap = (i128(1) << 100);  // headroom guard for 10^k scaling

std::string digits_of(i128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::string rev(out.rbegin(), out.rend());
    return rev;
}

std::string trim_fraction(std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::optional<std::string> finite_decimal(const Rational& r) {
    std::int64_t den = r.den();
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return std::nullopt;
    int k = twos > fives ? twos : fives;
    if (k > 18) return std::nullopt;  // absurdly long exact form; round instead
    i128 scale = 1;
    for (int i = 0; i < k; ++i) scale *= 10;
    i128 mag = i128(r.num() < 0 ? -r.num() : r.num()) * (scale / i128(r.den()));
    std::string body = digits_of(mag);
    if (k > 0) {
        while (body.size() <= std::size_t(k)) body.insert(body.begin(), '0');
        body.insert(body.size() - std::size_t(k), ".");
        body = trim_fraction(body);
    }
    if (r.num() < 0 && body != "0") body.insert(body.begin(), '-');
    return body;
}

std::string rounded_decimal(const Rational& r) {
    if (r.num() == 0) return "0";
    i128 a = r.num() < 0 ? -i128(r.num()) : i128(r.num());
    i128 b = r.den();
    // e = floor(log10(a/b))
    int e = 0;
    if (a >= b) {
        i128 hi = b;
        while (hi * 10 <= a && hi < kI128Cap) {
            hi *= 10;
            ++e;
        }
    } else {
        i128 lo = a;
        while (lo < b) {
            if (lo > kI128Cap) break;
            lo *= 10;
            --e;
        }
    }
    // D = round(a * 10^(5-e) / b), a six-digit integer
    i128 num = a, denom = b;
    int shift = 5 - e;
    bool overflow = false;
    if (shift >= 0) {
        for (int i = 0; i < shift; ++i) {
            num *= 10;
            if (num > kI128Cap) {
                overflow = true;
                break;
            }
        }
    } else {
        for (int i = 0; i < -shift; ++i) {
            denom *= 10;
            if (denom > kI128Cap) {
                overflow = true;
                break;
            }
        }
    }
    if (overflow) return r.str();  // pathological magnitude; emit exact text
    i128 q = num / denom;
    i128 rem = num % denom;
    if (2 * rem >= denom) ++q;
    if (q == 1000000) {
        q = 100000;
        ++e;
    }
    std::string d = digits_of(q);  // exactly 6 digits
    std::string body;
    if (e >= 5) {
        body = d + std::string(std::size_t(e - 5), '0');
    } else if (e >= 0) {
        body = d.substr(0, std::size_t(e + 1)) + "." + d.substr(std::size_t(e + 1));
        body = trim_fraction(body);
    } else {
        body = "0." + std::string(std::size_t(-e - 1), '0') + d;
        body = trim_fraction(body);
    }
    if (r.num() < 0) body.insert(body.begin(), '-');
    return body;
}

namespace {

// Coordinate text plus whether it was exact.
struct Coord {
    std::string text;
    bool exact;
};

Coord coord(const Rational& r) {
    if (auto d = finite_decimal(r)) return {*d, true};
    return {rounded_decimal(r), false};
}

const char* layer_class(Layer layer) {
    switch (layer) {
        case Layer::LAYOUT: return "layout";
        case Layer::MARK: return "mark";
        case Layer::DETAIL: return "detail";
        case Layer::WALL: return "wall";
        case Layer::CONFIG: return "config";
    }
    throw InvalidGeometry("unknown layer in render");
}

void escape_xml(const std::string& in, std::string& out) {
    for (char c : in) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
}

const char kStyle[] =
    "  <style>\n"
    "    line { stroke-linecap: square; }\n"
    "    text { font-family: monospace; font-size: 0.5px; stroke: none; }\n"
    "    .layout { stroke: #000000; fill: #000000; stroke-width: 0.05; }\n"
    "    .mark { stroke: #1f4fd8; fill: #1f4fd8; stroke-width: 0.05; }\n"
    "    .detail { stroke: #c0392b; fill: #c0392b; stroke-width: 0.05; }\n"
    "    .wall { stroke: #000000; fill: #000000; stroke-width: 0.12; }\n"
    "    .config { stroke: #777777; fill: #777777; stroke-width: 0.04; }\n"
    "  </style>\n";

}  // namespace

std::string render_svg(const Shape& shape, const RenderOptions& opts) {
    const Rational half(1, 2);
    const Rational tick(7, 20);    // point crosshair half-length
    const Rational nudge(9, 20);   // label offset from the point

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    auto box = shape.bbox();
    if (!box) {
        out += "0 0 1 1";
    } else {
        auto [lo, hi] = *box;
        Rational w = hi.x - lo.x;
        Rational h = hi.y - lo.y;
        Rational span = w < h ? h : w;
        Rational margin = span / Rational(20) + half;
        // SVG y axis points down; flip so the model's +y is up.
        Rational minx = lo.x - margin;
        Rational miny = -hi.y - margin;
        Rational two(2);
        out += coord(minx).text;
        out += " ";
        out += coord(miny).text;
        out += " ";
        out += coord(w + two * margin).text;
        out += " ";
        out += coord(h + two * margin).text;
    }
    out += "\">\n";
    out += kStyle;

    for (const auto& run : shape.runs()) {
        Point a = run.p1();
        Point b = run.p2();
        Coord x1 = coord(a.x);
        Coord y1 = coord(-a.y);
        Coord x2 = coord(b.x);
        Coord y2 = coord(-b.y);
        out += "  <line class=\"";
        out += layer_class(run.layer);
        out += "\" x1=\"" + x1.text + "\" y1=\"" + y1.text + "\" x2=\"" + x2.text +
               "\" y2=\"" + y2.text + "\"";
        if (!(x1.exact && y1.exact && x2.exact && y2.exact)) {
            out += " data-exact=\"(" + a.x.str() + "," + a.y.str() + ")-(" + b.x.str() + "," +
                   b.y.str() + ")\"";
        }
        out += "/>\n";
    }

    for (const auto& pt : shape.points()) {
        Coord cx = coord(pt.pos.x);
        Coord cy = coord(-pt.pos.y);
        Coord xl = coord(pt.pos.x - tick);
        Coord xr = coord(pt.pos.x + tick);
        Coord yd = coord(-pt.pos.y - tick);
        Coord yu = coord(-pt.pos.y + tick);
        out += "  <g class=\"";
        out += layer_class(pt.layer);
        out += "\"";
        if (!(cx.exact && cy.exact)) {
            out += " data-exact=\"(" + pt.pos.x.str() + "," + pt.pos.y.str() + ")\"";
        }
        out += ">\n";
        out += "    <line x1=\"" + xl.text + "\" y1=\"" + cy.text + "\" x2=\"" + xr.text +
               "\" y2=\"" + cy.text + "\"/>\n";
        out += "    <line x1=\"" + cx.text + "\" y1=\"" + yd.text + "\" x2=\"" + cx.text +
               "\" y2=\"" + yu.text + "\"/>\n";
        if (opts.labels) {
            Coord tx = coord(pt.pos.x + nudge);
            Coord ty = coord(-pt.pos.y - nudge);
            out += "    <text x=\"" + tx.text + "\" y=\"" + ty.text + "\">";
            escape_xml(pt.tag, out);
            out += "</text>\n";
        }
        out += "  </g>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace plategen

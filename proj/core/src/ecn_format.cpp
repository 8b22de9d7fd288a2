#include <sstream>

#include "ecn/numbers.hpp"

namespace ecn::numbers {

std::string_view class_name(NumberClass c) {
  switch (c) {
    case NumberClass::kPrcn: return "PRCN";
    case NumberClass::kSprcn: return "SPRCN";
    case NumberClass::kRcn: return "RCN";
    case NumberClass::kNgcn: return "NGCN";
    case NumberClass::kGcn: return "GCN";
  }
  return "";
}

namespace {

std::string header(NumberClass c, const Int& i) {
  std::ostringstream out;
  out << "class: " << class_name(c) << "\n" << "I: " << i.str() << "\n";
  return out.str();
}

// Splits into lines, tracking byte offsets; trailing '\r' stripped.
struct Lines {
  std::vector<std::pair<std::string_view, std::size_t>> rows;
  std::size_t next = 0;

  explicit Lines(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::size_t end = nl == std::string_view::npos ? text.size() : nl;
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      rows.push_back({line, pos});
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  bool blank(std::string_view s) const {
    return s.find_first_not_of(" \t") == std::string_view::npos;
  }

  std::optional<std::pair<std::string_view, std::size_t>> next_content() {
    while (next < rows.size()) {
      auto row = rows[next++];
      if (!blank(row.first)) return row;
    }
    return std::nullopt;
  }

  // Remaining rows (including blanks) re-joined, for program bodies.
  std::pair<std::string, std::size_t> rest() {
    std::string out;
    std::size_t at = next < rows.size() ? rows[next].second : 0;
    for (; next < rows.size(); ++next) {
      out.append(rows[next].first);
      out.push_back('\n');
    }
    return {out, at};
  }
};

struct Reject {
  Rejection r;
};

std::string_view expect_key(std::string_view line, std::string_view key, std::size_t at) {
  if (line.substr(0, key.size()) != key)
    throw Reject{{"expected '" + std::string(key) + "'", at}};
  auto rest = line.substr(key.size());
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
  return rest;
}

std::pair<std::string_view, std::size_t> need_line(Lines& lines, std::string_view what) {
  auto row = lines.next_content();
  if (!row) throw Reject{{"missing " + std::string(what), 0}};
  return *row;
}

prf::ExprPtr parse_expr_line(Lines& lines, std::string_view key, std::uint32_t arity,
                             std::string_view what) {
  auto [line, at] = need_line(lines, what);
  auto payload = expect_key(line, key, at);
  prf::ExprPtr e;
  try {
    e = prf::parse(payload);
  } catch (const prf::SyntaxError& err) {
    throw Reject{{std::string("SyntaxError: ") + err.what(), at + err.position}};
  }
  prf::ArityReport r = prf::check(*e);
  if (!r.well_formed) throw Reject{{"ArityError: " + r.error, at}};
  if (!prf::usable_at(r, arity))
    throw Reject{{"ArityError: expression of arity " + std::to_string(r.arity) +
                      " where arity " + std::to_string(arity) + " is required",
                  at}};
  return e;
}

machine::ToyMachine parse_program(Lines& lines, bool bits_only) {
  auto [line, at] = need_line(lines, "program");
  expect_key(line, "program:", at);
  auto [body, body_at] = lines.rest();
  auto m = machine::parse(body);
  if (!m) throw Reject{{"SyntaxError: malformed machine program", body_at}};
  if (bits_only && !machine::emits_bits_only(*m))
    throw Reject{{"EmitError: coefficient program may only emit bits", body_at}};
  return *m;
}

void expect_eof(Lines& lines) {
  if (auto row = lines.next_content())
    throw Reject{{"trailing input after payload", row->second}};
}

ParsedNumber parse_any(std::string_view text, NumberClass& cls_out) {
  Lines lines(text);
  auto [cls_line, cls_at] = need_line(lines, "class header");
  auto cls_text = expect_key(cls_line, "class:", cls_at);
  NumberClass cls;
  if (cls_text == "PRCN") cls = NumberClass::kPrcn;
  else if (cls_text == "SPRCN") cls = NumberClass::kSprcn;
  else if (cls_text == "RCN") cls = NumberClass::kRcn;
  else if (cls_text == "NGCN") cls = NumberClass::kNgcn;
  else if (cls_text == "GCN") cls = NumberClass::kGcn;
  else throw Reject{{"unknown class tag", cls_at}};
  cls_out = cls;

  auto [i_line, i_at] = need_line(lines, "integer part");
  auto i_text = expect_key(i_line, "I:", i_at);
  auto int_part = Int::parse(i_text);
  if (!int_part) throw Reject{{"malformed integer part", i_at}};

  switch (cls) {
    case NumberClass::kPrcn: {
      auto coeff = parse_expr_line(lines, "coeff:", 1, "coefficient expression");
      expect_eof(lines);
      return Prcn{*int_part, coeff};
    }
    case NumberClass::kSprcn: {
      auto coeff = parse_expr_line(lines, "coeff:", 1, "coefficient expression");
      expect_eof(lines);
      return Sprcn{*int_part, coeff};
    }
    case NumberClass::kRcn: {
      auto m = parse_program(lines, /*bits_only=*/true);
      return Rcn{*int_part, std::move(m)};
    }
    case NumberClass::kNgcn: {
      auto coeff2 = parse_expr_line(lines, "coeff2:", 2, "coefficient expression");
      auto revision = parse_expr_line(lines, "revision:", 1, "revision bound");
      expect_eof(lines);
      return gcn::Ngcn{*int_part, coeff2, revision};
    }
    case NumberClass::kGcn: {
      auto [m_line, m_at] = need_line(lines, "output bound");
      auto m_text = expect_key(m_line, "M:", m_at);
      auto bound = Nat::parse(m_text);
      if (!bound || bound->is_zero()) throw Reject{{"output bound must be >= 1", m_at}};
      auto jump = parse_expr_line(lines, "jump:", 1, "jump bound");
      auto prog = parse_program(lines, /*bits_only=*/false);
      return gcn::machine_gcn(std::move(prog), *bound, jump);
    }
  }
  throw Reject{{"unreachable", 0}};
}

}  // namespace

std::string serialize(const Prcn& x) {
  return header(NumberClass::kPrcn, x.int_part) + "coeff: " + prf::print(*x.coeff) + "\n";
}

std::string serialize(const Sprcn& x) {
  return header(NumberClass::kSprcn, x.int_part) + "coeff: " + prf::print(*x.coeff) + "\n";
}

std::string serialize(const Rcn& x) {
  return header(NumberClass::kRcn, x.int_part) + "program:\n" + machine::print(x.coeff);
}

std::string serialize(const gcn::Ngcn& x) {
  return header(NumberClass::kNgcn, x.int_part) + "coeff2: " + prf::print(*x.coeff2) + "\n" +
         "revision: " + prf::print(*x.revision) + "\n";
}

std::string serialize(const gcn::Gcn& x) {
  if (!x.source) throw std::logic_error("only machine-backed GCNs serialize");
  return header(NumberClass::kGcn, Int(0l)) + "M: " + x.bound_m.str() + "\n" +
         "jump: " + prf::print(*x.jump_bound) + "\n" + "program:\n" + machine::print(*x.source);
}

std::string serialize(const ParsedNumber& x) {
  return std::visit([](const auto& v) { return serialize(v); }, x);
}

ValidateResult validate(std::string_view text) {
  ValidateResult out;
  try {
    out.accepted = parse_any(text, out.cls);
  } catch (const Reject& rej) {
    out.rejection = rej.r;
  }
  return out;
}

ParsedNumber deserialize(std::string_view text) {
  ValidateResult r = validate(text);
  if (!r.ok())
    throw DeserializeError(r.rejection.reason + " (byte " +
                           std::to_string(r.rejection.position) + ")");
  return std::move(*r.accepted);
}

}  // namespace ecn::numbers

#include "memlang/ext_term.h"

namespace memlang {

Frame Frame::let(Ident var, CompPtr body) {
  Frame f;
  f.kind = Kind::kLet;
  f.var = std::move(var);
  f.body = std::move(body);
  return f;
}

Frame Frame::memo(FunLabel fn, AtomLabel a, Env restore) {
  Frame f;
  f.kind = Kind::kMemo;
  f.fun = fn;
  f.atom = a;
  f.restore = std::move(restore);
  return f;
}

bool Frame::operator==(const Frame& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::kLet) return var == other.var && *body == *other.body;
  return fun == other.fun && atom == other.atom && restore == other.restore;
}

void ExtTerm::normalize() {
  while (!frames.empty() && frames.back().kind == Frame::Kind::kLet) {
    Frame f = std::move(frames.back());
    frames.pop_back();
    focus = c_let(f.var, focus, f.body);
  }
}

std::vector<std::pair<FunLabel, AtomLabel>> ExtTerm::memo_pairs() const {
  std::vector<std::pair<FunLabel, AtomLabel>> out;
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    if (it->kind == Frame::Kind::kMemo) out.emplace_back(it->fun, it->atom);
  }
  return out;
}

bool ExtTerm::operator==(const ExtTerm& other) const {
  return frames == other.frames && *focus == *other.focus;
}

std::string pretty(const ExtTerm& e) {
  std::string s = pretty(*e.focus);
  for (auto it = e.frames.rbegin(); it != e.frames.rend(); ++it) {
    if (it->kind == Frame::Kind::kLet) {
      s = "let val " + it->var + " <- " + s + " in " + pretty(*it->body);
    } else {
      s = "{{ " + s + " }}^{f" + std::to_string(it->fun.id) + ",a" +
          std::to_string(it->atom.id) + "}";
    }
  }
  return s;
}

}  // namespace memlang

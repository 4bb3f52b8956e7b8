#pragma once

#include "silting/decompose.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace silting {

struct EnumerationOptions {
  std::size_t dim_bound = 3;
  std::size_t budget = std::size_t(1) << 24;  // candidate representations
  std::size_t jobs = 1;
  bool use_disk_cache = true;
};

namespace detail {

inline void dimension_vectors(std::size_t nv, std::size_t total, std::vector<std::size_t>& cur,
                              std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == nv) {
    std::size_t s = 0;
    for (auto c : cur) s += c;
    if (s == total) out.push_back(cur);
    return;
  }
  std::size_t used = 0;
  for (auto c : cur) used += c;
  for (std::size_t d = 0; d + used <= total; ++d) {
    cur.push_back(d);
    dimension_vectors(nv, total, cur, out);
    cur.pop_back();
  }
}

/// Module with arrow actions given block-wise; actions of all basis elements via word coefficients.
template <Field F>
std::optional<Module<F>> module_from_arrows(const AlgebraPtr<F>& alg, const std::vector<std::size_t>& dims,
                                            const std::vector<std::size_t>& offsets, std::size_t n,
                                            const std::vector<Matrix<F>>& arrows) {
  const F& f = alg->field();
  std::vector<Matrix<F>> word_actions;
  for (const auto& w : alg->words()) {
    Matrix<F> act(f, n, n);
    const std::size_t v = w.vertex;
    for (std::size_t i = 0; i < dims[v]; ++i) act(offsets[v] + i, offsets[v] + i) = f.one();
    for (auto a : w.arrows) act = arrows[a] * act;
    word_actions.push_back(std::move(act));
  }
  const Matrix<F>& wc = alg->word_coefficients();
  std::vector<Matrix<F>> acts;
  for (std::size_t k = 0; k < alg->dim(); ++k) {
    Matrix<F> act(f, n, n);
    for (std::size_t w = 0; w < word_actions.size(); ++w) act.add_scaled(wc(w, k), word_actions[w]);
    acts.push_back(std::move(act));
  }
  // structure constants, checked directly
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      const Matrix<F> c = alg->structure_constant(i, j);
      Matrix<F> rhs(f, n, n);
      for (std::size_t k = 0; k < alg->dim(); ++k) rhs.add_scaled(c(k, 0), acts[k]);
      if (!(acts[i] * acts[j] == rhs)) return std::nullopt;
    }
  return Module<F>::trusted(alg, std::move(acts));
}

inline std::mutex& enumeration_mutex() {
  static std::mutex mu;
  return mu;
}

template <Field F>
std::map<std::tuple<std::uint64_t, std::size_t>, std::vector<Module<F>>>& enumeration_cache() {
  static std::map<std::tuple<std::uint64_t, std::size_t>, std::vector<Module<F>>> cache;
  return cache;
}

template <Field F>
std::filesystem::path disk_cache_path(const Algebra<F>& alg, std::size_t bound) {
  const char* dir = std::getenv("SILTING_FORGE_CACHE");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) / ("indecomposables-" + alg.id() + "-" + std::to_string(bound) + ".txt");
}

template <Field F>
void save_modules(const std::filesystem::path& path, const std::vector<Module<F>>& mods) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) return;
    os << mods.size() << '\n';
    for (const auto& m : mods) {
      os << m.dim() << '\n';
      for (const auto& a : m.actions()) {
        for (std::size_t i = 0; i < a.rows(); ++i)
          for (std::size_t j = 0; j < a.cols(); ++j) os << m.field().to_string(a(i, j)) << ' ';
        os << '\n';
      }
    }
  }
  std::filesystem::rename(tmp, path, ec);
}

template <Field F>
std::optional<std::vector<Module<F>>> load_modules(const std::filesystem::path& path, const AlgebraPtr<F>& alg) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  std::size_t count = 0;
  if (!(is >> count)) return std::nullopt;
  std::vector<Module<F>> out;
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t n = 0;
    if (!(is >> n)) return std::nullopt;
    std::vector<Matrix<F>> acts;
    for (std::size_t k = 0; k < alg->dim(); ++k) {
      Matrix<F> a(alg->field(), n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::string tok;
          if (!(is >> tok)) return std::nullopt;
          a(i, j) = alg->field().parse(tok);
        }
      acts.push_back(std::move(a));
    }
    auto m = Module<F>::trusted(alg, std::move(acts));
    if (!m.violations().empty()) return std::nullopt;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

/// All indecomposable modules of total dimension <= bound up to isomorphism, ordered by total dimension,
/// then dimension vector, then the first representative found in a fixed enumeration order.
template <Field F>
std::vector<Module<F>> enumerate_indecomposables(const AlgebraPtr<F>& alg, const EnumerationOptions& opt = {}) {
  const F& f = alg->field();
  if (!f.is_finite()) throw Error("enumeration requires finite field");
  const auto key = std::make_tuple(alg->hash(), opt.dim_bound);
  {
    std::lock_guard<std::mutex> lock(detail::enumeration_mutex());
    auto& cache = detail::enumeration_cache<F>();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const auto path = opt.use_disk_cache ? detail::disk_cache_path(*alg, opt.dim_bound) : std::filesystem::path{};
  if (!path.empty()) {
    if (auto loaded = detail::load_modules(path, alg)) {
      std::lock_guard<std::mutex> lock(detail::enumeration_mutex());
      detail::enumeration_cache<F>()[key] = *loaded;
      return *loaded;
    }
  }

  const std::size_t nv = alg->num_vertices();
  const std::size_t na = alg->num_arrows();
  const std::uint64_t q = f.size();
  std::vector<Module<F>> found;
  std::size_t spent = 0;
  for (std::size_t total = 1; total <= opt.dim_bound; ++total) {
    std::vector<std::vector<std::size_t>> dvs;
    std::vector<std::size_t> cur;
    detail::dimension_vectors(nv, total, cur, dvs);
    std::sort(dvs.begin(), dvs.end(), std::greater<>());
    for (const auto& dims : dvs) {
      std::vector<std::size_t> offsets(nv, 0);
      for (std::size_t v = 1; v < nv; ++v) offsets[v] = offsets[v - 1] + dims[v - 1];
      std::size_t entries = 0;
      for (std::size_t a = 0; a < na; ++a) entries += dims[alg->arrow_source(a)] * dims[alg->arrow_target(a)];
      std::uint64_t candidates = 1;
      for (std::size_t e = 0; e < entries; ++e) {
        candidates *= q;
        if (candidates + spent > opt.budget)
          throw Error("enumeration budget exceeded at dimension vector of total " + std::to_string(total) + "; " +
                      std::to_string(found.size()) + " indecomposables found so far");
      }
      spent += candidates;

      auto decode = [&](std::uint64_t code) {
        std::vector<Matrix<F>> arrows;
        for (std::size_t a = 0; a < na; ++a) {
          const std::size_t s = alg->arrow_source(a), t = alg->arrow_target(a);
          Matrix<F> m(f, total, total);
          for (std::size_t i = 0; i < dims[t]; ++i)
            for (std::size_t j = 0; j < dims[s]; ++j) {
              m(offsets[t] + i, offsets[s] + j) = f.element(code % q);
              code /= q;
            }
          arrows.push_back(std::move(m));
        }
        return arrows;
      };

      // Workers collect the valid indecomposable candidates; the merge below is sequential in code order.
      const std::size_t jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(opt.jobs, candidates));
      std::vector<std::vector<std::pair<std::uint64_t, Module<F>>>> per_job(jobs);
      std::exception_ptr failure;
      std::mutex failure_mu;
      auto work = [&](std::size_t j) {
        try {
          for (std::uint64_t code = j; code < candidates; code += jobs) {
            auto m = detail::module_from_arrows(alg, dims, offsets, total, decode(code));
            if (!m) continue;
            if (split_summands(*m).size() != 1) continue;
            per_job[j].emplace_back(code, std::move(*m));
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      };
      if (jobs == 1) {
        work(0);
      } else {
        std::vector<std::thread> threads;
        for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(work, j);
        for (auto& t : threads) t.join();
      }
      if (failure) std::rethrow_exception(failure);
      std::vector<std::pair<std::uint64_t, Module<F>>> merged;
      for (auto& v : per_job)
        for (auto& e : v) merged.push_back(std::move(e));
      std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      const std::size_t first_new = found.size();
      for (auto& [code, m] : merged) {
        bool dup = false;
        for (std::size_t i = first_new; i < found.size() && !dup; ++i)
          dup = indecomposable_isomorphism(found[i], m).has_value();
        if (!dup) found.push_back(std::move(m));
      }
    }
  }
  {
    std::lock_guard<std::mutex> lock(detail::enumeration_mutex());
    detail::enumeration_cache<F>()[key] = found;
  }
  if (!path.empty()) detail::save_modules(path, found);
  return found;
}

}  // namespace silting

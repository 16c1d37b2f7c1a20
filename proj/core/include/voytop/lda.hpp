#ifndef VOYTOP_LDA_HPP
#define VOYTOP_LDA_HPP

#include <cstdint>
#include <vector>

#include "voytop/factor.hpp"
#include "voytop/vectorize.hpp"

namespace voytop {

struct LdaConfig {
  int k = 6;
  double alpha = 0.1;   // symmetric doc-topic prior
  double beta = 0.01;   // symmetric topic-term prior
  int iterations = 1000;
  int burn_in = 500;
  int sample_every = 10;  // thinning of post-burn-in averages
  std::uint64_t seed = 0;

  void validate() const;
};

// Collapsed Gibbs sampler state, exposed for the count-consistency
// invariant: the count tables must equal a full recount of z at any sweep.
struct GibbsState {
  std::vector<int> z;                     // topic per token position
  std::vector<int> doc_of;                // document per token position
  std::vector<int> word_of;               // vocabulary column per token position
  std::vector<std::vector<int>> n_dk;     // doc x topic
  std::vector<std::vector<int>> n_kw;     // topic x term
  std::vector<int> n_k;                   // topic totals

  bool counts_consistent() const;
};

// Collapsed Gibbs LDA over BoW counts. theta/phi are averages of the
// thinned post-burn-in samples; rows sum to 1. `sweep_hook`, when
// non-null, is called with the state after every full sweep.
DocTopicModel lda_fit(const CountMatrix& counts, const LdaConfig& config,
                      void (*sweep_hook)(const GibbsState&, int sweep, void* ctx) = nullptr,
                      void* hook_ctx = nullptr);

// exp(-sum_tokens log sum_k theta_dk phi_kw / total tokens)
double perplexity(const DocTopicModel& model, const CountMatrix& counts);

}  // namespace voytop

#endif  // VOYTOP_LDA_HPP

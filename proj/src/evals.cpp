#include "cdual/evals.hpp"

namespace cdual {

EvHatPlan make_ev_hat_plan(const WordContext& ctx, const Word& w, const WeylElement& v, const WeylElement& w1) {
  if (!is_type_a_matrix_layer(ctx.cartan())) throw UnsupportedForType("twisted evaluation needs type A");
  const auto wit = ctx.membership(w, v, w1);
  if (!wit) throw PreconditionFailed("'" + format_word(w) + "' is not in the requested class");
  EvHatPlan p;
  p.rank = ctx.cartan().rank;
  p.word = w;
  p.v = v;
  p.w1 = w1;
  MapBuilder b(ctx, w);
  for (std::size_t q : wit->swaps) b.swap(q, true);
  p.to_trivial = b.build();
  p.trivial = wit->trivial;
  p.decomposition = wit->decomposition;
  p.w0 = ctx.w0();
  p.w2w0 = wit->decomposition.w2 * ctx.w0();
  return p;
}

TauProductPlan make_tau_product_plan(const WordContext& ctx, const Word& barred) {
  if (!is_type_a_matrix_layer(ctx.cartan())) throw UnsupportedForType("tau product needs type A");
  TauProductPlan p;
  p.rank = ctx.cartan().rank;
  p.word = barred;
  for (std::size_t k = 0; k < barred.size(); ++k) p.zetas.push_back(zeta_negative_map(ctx, barred, k));
  return p;
}

}  // namespace cdual

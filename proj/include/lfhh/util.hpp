#pragma once

namespace lfhh {

// Visitor helper for std::visit over node variants.
template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace lfhh

#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace wlab::detail
{
  /// Adjacency lists with a small per-edge tag.
  struct TaggedGraph
  {
    std::vector<std::vector<std::pair<int, std::uint8_t>>> adj;

    int add_node()
    {
      adj.emplace_back();
      return static_cast<int>(adj.size()) - 1;
    }
    void add_edge(int from, int to, std::uint8_t tag = 0)
    {
      adj[static_cast<std::size_t>(from)].emplace_back(to, tag);
    }
    std::size_t size() const noexcept { return adj.size(); }
  };

  /// Iterative Tarjan; returns the component index of every node.
  inline std::vector<int> strongly_connected_components(const TaggedGraph& g)
  {
    const int n = static_cast<int>(g.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1),
      low(static_cast<std::size_t>(n), 0), comp(static_cast<std::size_t>(n), -1);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0, ncomp = 0;
    for (int root = 0; root < n; ++root)
      {
        if (index[static_cast<std::size_t>(root)] >= 0)
          continue;
        call.emplace_back(root, 0);
        while (!call.empty())
          {
            auto& [v, i] = call.back();
            auto vs = static_cast<std::size_t>(v);
            if (i == 0 && index[vs] < 0)
              {
                index[vs] = low[vs] = counter++;
                stack.push_back(v);
                on_stack[vs] = 1;
              }
            const auto& out = g.adj[vs];
            if (i < out.size())
              {
                int w = out[i].first;
                ++i;
                auto ws = static_cast<std::size_t>(w);
                if (index[ws] < 0)
                  call.emplace_back(w, 0);
                else if (on_stack[ws])
                  low[vs] = std::min(low[vs], index[ws]);
                continue;
              }
            if (low[vs] == index[vs])
              {
                int w;
                do
                  {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    comp[static_cast<std::size_t>(w)] = ncomp;
                  }
                while (w != v);
                ++ncomp;
              }
            int done = v;
            call.pop_back();
            if (!call.empty())
              {
                auto ps = static_cast<std::size_t>(call.back().first);
                low[ps] = std::min(low[ps], low[static_cast<std::size_t>(done)]);
              }
          }
      }
    return comp;
  }

  /// Per component: OR of the tags of its internal edges, and whether it
  /// holds at least one internal edge (i.e. contains a cycle).
  struct ComponentSummary
  {
    std::vector<int> comp;
    std::vector<std::uint8_t> tags;
    std::vector<char> cyclic;
  };

  inline ComponentSummary summarize_components(const TaggedGraph& g)
  {
    ComponentSummary s;
    s.comp = strongly_connected_components(g);
    int nc = 0;
    for (int c: s.comp)
      nc = std::max(nc, c + 1);
    s.tags.assign(static_cast<std::size_t>(nc), 0);
    s.cyclic.assign(static_cast<std::size_t>(nc), 0);
    for (std::size_t v = 0; v < g.size(); ++v)
      for (auto [w, tag]: g.adj[v])
        if (s.comp[v] == s.comp[static_cast<std::size_t>(w)])
          {
            auto c = static_cast<std::size_t>(s.comp[v]);
            s.cyclic[c] = 1;
            s.tags[c] = static_cast<std::uint8_t>(s.tags[c] | tag);
          }
    return s;
  }
}

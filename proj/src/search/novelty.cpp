#include "olmcts/search/novelty.hpp"

#include <algorithm>

namespace olm::search {

namespace {

void merge_atoms(engine::FeatureAtomSet& into,
                 const engine::FeatureAtomSet& from) {
  engine::FeatureAtomSet merged;
  merged.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(),
                 std::back_inserter(merged));
  into = std::move(merged);
}

bool has_new_atom(const engine::FeatureAtomSet& atoms,
                  const engine::FeatureAtomSet& neighborhood) {
  for (uint64_t a : atoms)
    if (!std::binary_search(neighborhood.begin(), neighborhood.end(), a))
      return true;
  return false;
}

// A node is marked not-novel when all its tested children are.
void propagate_not_novel(Node* node) {
  while (node && node->group_tested && !node->children.empty()) {
    bool all_not_novel = true;
    for (const auto& c : node->children)
      all_not_novel &= (c->mark == NoveltyMark::NotNovel);
    if (!all_not_novel || node->mark == NoveltyMark::NotNovel) break;
    node->mark = NoveltyMark::NotNovel;
    node = node->parent;
  }
}

}  // namespace

engine::FeatureAtomSet neighborhood_atoms(const Node& node) {
  engine::FeatureAtomSet atoms;
  for (const Node* n = node.parent; n != nullptr; n = n->parent)
    if (n->tuples_set) merge_atoms(atoms, n->tuple_store);
  return atoms;
}

bool novelty_exempt(double child_score, double parent_score,
                    engine::Action action, const engine::GameSpec& spec) {
  if (child_score > parent_score) return true;
  if (engine::is_movement(action)) {
    if (spec.axes != engine::MovementAxes::Both) return true;
    if (2 * spec.speed_num <= spec.speed_den) return true;  // speed <= 0.5
  }
  return false;
}

void novelty_group_test(Node& parent, const engine::GameState& parent_state,
                        Rng& rng) {
  parent.group_tested = true;
  if (parent.children.empty()) return;

  // Ensure one test state per child.
  for (auto& child : parent.children) {
    if (child->has_test_record) continue;
    engine::GameState s = parent_state;
    engine::advance(s, child->action, rng);
    child->test_atoms = engine::feature_atoms(s);
    child->test_score = s.score;
    child->has_test_record = true;
  }

  const engine::FeatureAtomSet parent_atoms =
      parent.has_test_record ? parent.test_atoms
                             : engine::feature_atoms(parent_state);
  const double parent_score =
      parent.has_test_record ? parent.test_score : parent_state.score;

  // The children's shared neighborhood: the parent, the parent's sibling
  // group (its own tuple store), and the parent's neighborhood (ancestor
  // stores). Left-sibling atoms accumulate inside the loop below.
  engine::FeatureAtomSet neighborhood = neighborhood_atoms(parent);
  if (parent.tuples_set) merge_atoms(neighborhood, parent.tuple_store);
  merge_atoms(neighborhood, parent_atoms);

  for (auto& child : parent.children) {
    bool novel =
        novelty_exempt(child->test_score, parent_score, child->action,
                       *parent_state.spec) ||
        has_new_atom(child->test_atoms, neighborhood);
    child->mark = novel ? NoveltyMark::Novel : NoveltyMark::NotNovel;
    merge_atoms(neighborhood, child->test_atoms);  // left-sibling rule
  }

  // Every child stores the atoms of the states of {parent} + all children.
  engine::FeatureAtomSet store = parent_atoms;
  for (const auto& child : parent.children)
    merge_atoms(store, child->test_atoms);
  for (auto& child : parent.children) {
    child->tuple_store = store;
    child->tuples_set = true;
  }

  propagate_not_novel(&parent);
}

std::vector<Node*> filter_children(const std::vector<Node*>& children,
                                   double parent_normalized_avg) {
  if (parent_normalized_avg < 0.5) return children;  // dangerous: keep all
  std::vector<Node*> novel;
  for (Node* c : children)
    if (c->mark != NoveltyMark::NotNovel) novel.push_back(c);
  return novel.empty() ? children : novel;
}

void reset_first_ply_marks(Node& new_root) {
  new_root.group_tested = false;
  for (auto& child : new_root.children) {
    child->mark = NoveltyMark::Untested;
    child->tuple_store.clear();
    child->tuples_set = false;
    child->has_test_record = false;
    child->test_atoms.clear();
  }
}

}  // namespace olm::search

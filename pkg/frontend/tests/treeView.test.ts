import { describe, expect, it } from 'vitest';

import { formatPercent, probabilityFromLogprob } from '../src/format';
import { renderCollapsedView, renderTreeView } from '../src/treeView';
import type { TreeResponse } from '../src/types';
import { fixture } from './helpers';

const golden = fixture<TreeResponse>('tree.json');
const collapsed = fixture<TreeResponse>('tree-collapsed.json');

function render(response: TreeResponse = golden) {
  const container = document.createElement('div');
  return { container, svg: renderTreeView(container, response) };
}

describe('renderTreeView', () => {
  it('shows every node of the document', () => {
    const { svg } = render();
    expect(svg.querySelectorAll('.node').length).toBe(golden.tree.nodes.length);
  });

  it('draws one edge per non-root node', () => {
    const { svg } = render();
    expect(svg.querySelectorAll('.edge').length).toBe(golden.tree.nodes.length - 1);
  });

  it('orders sibling edge widths by logprob', () => {
    const { svg } = render();
    const widthOf = new Map<number, number>();
    svg.querySelectorAll<SVGLineElement>('.edge').forEach((edge) => {
      widthOf.set(Number(edge.dataset.child),
                  Number(edge.getAttribute('stroke-width')));
    });
    const byParent = new Map<number, { id: number; logprob: number }[]>();
    for (const node of golden.tree.nodes) {
      if (node.parent_id === null) continue;
      const siblings = byParent.get(node.parent_id) ?? [];
      siblings.push({ id: node.id, logprob: node.logprob });
      byParent.set(node.parent_id, siblings);
    }
    for (const siblings of byParent.values()) {
      for (const a of siblings) {
        for (const b of siblings) {
          if (a.logprob > b.logprob) {
            expect(widthOf.get(a.id)!).toBeGreaterThan(widthOf.get(b.id)!);
          }
        }
      }
    }
  });

  it('marks unselected nodes as stubs with dashed outlines', () => {
    const { svg } = render();
    const stubIds = golden.tree.nodes.filter((n) => !n.selected).map((n) => n.id);
    expect(stubIds.length).toBeGreaterThan(0);
    for (const id of stubIds) {
      const node = svg.querySelector(`.node[data-node-id="${id}"]`)!;
      expect(node.classList.contains('stub')).toBe(true);
      expect(node.querySelector('circle')!.getAttribute('stroke-dasharray'))
        .not.toBeNull();
    }
  });

  it('shows each node rank as a badge', () => {
    const { svg } = render();
    for (const node of golden.tree.nodes) {
      const badge = svg.querySelector(
        `.node[data-node-id="${node.id}"] .rank-badge`,
      )!;
      expect(badge.getAttribute('data-rank')).toBe(String(node.rank));
    }
  });

  it('colors edges by the sentiment label from the payload', () => {
    const { svg } = render();
    const labels = new Set(
      Object.values(golden.sentiment!).map((entry) => entry.label),
    );
    expect(labels.size).toBeGreaterThan(0);
    const strokes = new Set<string>();
    svg.querySelectorAll<SVGLineElement>('.edge').forEach((edge) => {
      strokes.add(edge.getAttribute('stroke')!);
    });
    expect(strokes.size).toBe(labels.size);
  });

  it('displays each probability verbatim from the payload logprob', () => {
    const { svg } = render();
    for (const node of golden.tree.nodes) {
      if (node.parent_id === null) continue;
      const text = svg.querySelector(
        `.node[data-node-id="${node.id}"] .probability`,
      )!;
      const probability = probabilityFromLogprob(node.logprob);
      expect(text.textContent).toContain(formatPercent(probability));
      expect(text.querySelector('title')!.textContent).toBe(String(probability));
    }
  });

  it('fires the click callback with the node id', () => {
    const container = document.createElement('div');
    const clicked: number[] = [];
    const svg = renderTreeView(container, golden, {
      onNodeClick: (id) => clicked.push(id),
    });
    const target = svg.querySelector<SVGGElement>('.node[data-node-id="3"]')!;
    target.dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(clicked).toEqual([3]);
  });
});

describe('renderCollapsedView', () => {
  it('renders matches plus the root', () => {
    const container = document.createElement('div');
    const view = collapsed.collapsed!;
    const matches = view.nodes.filter((n) => n.keywords.length > 0).length;
    const svg = renderCollapsedView(container, view);
    expect(svg.querySelectorAll('.node').length).toBe(matches + 1);
  });

  it('shows collapsed edge probabilities verbatim', () => {
    const container = document.createElement('div');
    const view = collapsed.collapsed!;
    const svg = renderCollapsedView(container, view);
    const texts = [...svg.querySelectorAll('.probability')]
      .map((el) => el.textContent);
    for (const edge of view.edges) {
      expect(texts).toContain(formatPercent(edge.probability));
    }
  });

  it('labels matching nodes with their keywords', () => {
    const container = document.createElement('div');
    const view = collapsed.collapsed!;
    const svg = renderCollapsedView(container, view);
    for (const node of view.nodes) {
      if (node.keywords.length === 0) continue;
      const label = svg.querySelector(
        `.node[data-node-id="${node.id}"] .keywords`,
      )!;
      expect(label.textContent).toBe(node.keywords.join(', '));
    }
  });
});

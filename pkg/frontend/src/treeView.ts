/** SVG tree rendering: left-to-right layout, edge thickness encoding the
 * conditional probability, stub styling, rank badges, sentiment edge colors,
 * and group-colored node outlines.
 */

import {
  formatPercent,
  groupColor,
  probabilityFromLogprob,
  sentimentColor,
  strokeWidth,
} from './format';
import type {
  CollapsedViewPayload,
  TreeNodePayload,
  TreeResponse,
} from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';
const X_STEP = 140;
const Y_STEP = 36;
const MARGIN = 40;

export interface TreeViewOptions {
  onNodeClick?: (nodeId: number) => void;
  selectedNodeId?: number | null;
}

interface LayoutPoint {
  x: number;
  y: number;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K, attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

/** Depth gives x; leaves get consecutive y slots in child order and every
 * internal node sits at the mean of its children. */
function layout(
  ids: number[],
  parentOf: Map<number, number | null>,
  depthOf: Map<number, number>,
): Map<number, LayoutPoint> {
  const children = new Map<number, number[]>();
  let rootId: number | null = null;
  for (const id of ids) {
    const parent = parentOf.get(id);
    if (parent === null || parent === undefined || !parentOf.has(parent)) {
      rootId = id;
    } else {
      const siblings = children.get(parent) ?? [];
      siblings.push(id);
      children.set(parent, siblings);
    }
  }
  const positions = new Map<number, LayoutPoint>();
  let nextLeafSlot = 0;
  const place = (id: number): number => {
    const kids = children.get(id) ?? [];
    let y: number;
    if (kids.length === 0) {
      y = MARGIN + nextLeafSlot * Y_STEP;
      nextLeafSlot += 1;
    } else {
      const ys = kids.map(place);
      y = ys.reduce((a, b) => a + b, 0) / ys.length;
    }
    positions.set(id, { x: MARGIN + (depthOf.get(id) ?? 0) * X_STEP, y });
    return y;
  };
  if (rootId !== null) place(rootId);
  return positions;
}

function badge(x: number, y: number, rank: number): SVGGElement {
  const group = svgEl('g', { class: 'rank-badge', 'data-rank': rank });
  group.appendChild(svgEl('circle', { cx: x, cy: y, r: 8, fill: '#34495e' }));
  const text = svgEl('text', {
    x, y: y + 3, 'text-anchor': 'middle', fill: '#fff', 'font-size': 9,
  });
  text.textContent = String(rank);
  group.appendChild(text);
  return group;
}

export function renderTreeView(
  container: HTMLElement,
  response: TreeResponse,
  options: TreeViewOptions = {},
): SVGSVGElement {
  const nodes = response.tree.nodes;
  const byId = new Map<number, TreeNodePayload>(nodes.map((n) => [n.id, n]));
  const positions = layout(
    nodes.map((n) => n.id),
    new Map(nodes.map((n) => [n.id, n.parent_id])),
    new Map(nodes.map((n) => [n.id, n.depth])),
  );

  const maxX = Math.max(...[...positions.values()].map((p) => p.x));
  const maxY = Math.max(...[...positions.values()].map((p) => p.y));
  const svg = svgEl('svg', {
    class: 'tree-view',
    width: maxX + X_STEP,
    height: maxY + MARGIN,
  });

  for (const node of nodes) {
    if (node.parent_id === null) continue;
    const from = positions.get(node.parent_id)!;
    const to = positions.get(node.id)!;
    const probability = probabilityFromLogprob(node.logprob);
    const sentiment = response.sentiment?.[String(node.id)];
    const edge = svgEl('line', {
      class: 'edge',
      'data-child': node.id,
      x1: from.x, y1: from.y, x2: to.x, y2: to.y,
      stroke: sentiment ? sentimentColor(sentiment.label) : '#95a5a6',
      'stroke-width': strokeWidth(probability),
    });
    svg.appendChild(edge);
  }

  for (const node of nodes) {
    const { x, y } = positions.get(node.id)!;
    const isStub = !node.selected;
    const group = svgEl('g', {
      class: `node${isStub ? ' stub' : ''}${node.completed ? ' eos' : ''}`,
      'data-node-id': node.id,
    });
    const groupId = response.groups?.by_node[String(node.id)];
    const circle = svgEl('circle', {
      cx: x, cy: y, r: 6,
      fill: isStub ? '#ecf0f1' : '#2c3e50',
      stroke: groupId !== undefined ? groupColor(groupId) : '#2c3e50',
      'stroke-width': 2,
    });
    if (isStub) circle.setAttribute('stroke-dasharray', '3 2');
    group.appendChild(circle);

    const label = svgEl('text', {
      class: 'label', x: x + 10, y: y - 4, 'font-size': 12,
    });
    label.textContent = node.token ? node.token.piece : response.tree.prompt || '<root>';
    group.appendChild(label);

    if (node.parent_id !== null) {
      const probability = probabilityFromLogprob(node.logprob);
      const probText = svgEl('text', {
        class: 'probability', x: x + 10, y: y + 10, 'font-size': 10,
        fill: '#7f8c8d',
      });
      probText.textContent = formatPercent(probability);
      // Full precision on hover.
      const title = svgEl('title');
      title.textContent = String(probability);
      probText.appendChild(title);
      group.appendChild(probText);
    }

    const rank = byId.get(node.id)?.rank;
    if (rank !== null && rank !== undefined) {
      group.appendChild(badge(x - 12, y - 10, rank));
    }
    if (options.selectedNodeId === node.id) group.classList.add('selected');
    if (options.onNodeClick) {
      group.addEventListener('click', () => options.onNodeClick!(node.id));
    }
    svg.appendChild(group);
  }

  container.replaceChildren(svg);
  return svg;
}

export function renderCollapsedView(
  container: HTMLElement,
  collapsed: CollapsedViewPayload,
  options: TreeViewOptions = {},
): SVGSVGElement {
  const positions = layout(
    collapsed.nodes.map((n) => n.id),
    new Map(collapsed.nodes.map((n) => {
      const edge = collapsed.edges.find((e) => e.child_id === n.id);
      return [n.id, edge ? edge.parent_id : null];
    })),
    new Map(collapsed.nodes.map((n) => [n.id, n.depth])),
  );

  const maxX = Math.max(...[...positions.values()].map((p) => p.x));
  const maxY = Math.max(...[...positions.values()].map((p) => p.y));
  const svg = svgEl('svg', {
    class: 'tree-view collapsed',
    width: maxX + X_STEP,
    height: maxY + MARGIN,
  });

  for (const edge of collapsed.edges) {
    const from = positions.get(edge.parent_id)!;
    const to = positions.get(edge.child_id)!;
    const line = svgEl('line', {
      class: 'edge',
      'data-child': edge.child_id,
      'data-hidden-count': edge.hidden_count,
      x1: from.x, y1: from.y, x2: to.x, y2: to.y,
      stroke: '#95a5a6',
      'stroke-width': strokeWidth(edge.probability),
    });
    const title = svgEl('title');
    title.textContent = `${edge.hidden_text} (${edge.hidden_count} hidden, p=${edge.probability})`;
    line.appendChild(title);
    svg.appendChild(line);

    const mid = svgEl('text', {
      class: 'probability',
      x: (from.x + to.x) / 2, y: (from.y + to.y) / 2 - 4, 'font-size': 10,
      fill: '#7f8c8d', 'text-anchor': 'middle',
    });
    mid.textContent = formatPercent(edge.probability);
    svg.appendChild(mid);
  }

  for (const node of collapsed.nodes) {
    const { x, y } = positions.get(node.id)!;
    const group = svgEl('g', { class: 'node', 'data-node-id': node.id });
    group.appendChild(svgEl('circle', {
      cx: x, cy: y, r: 6, fill: '#2c3e50', stroke: '#2c3e50', 'stroke-width': 2,
    }));
    const label = svgEl('text', {
      class: 'label', x: x + 10, y: y - 4, 'font-size': 12,
    });
    label.textContent = node.piece ?? '<root>';
    group.appendChild(label);
    if (node.keywords.length > 0) {
      const kw = svgEl('text', {
        class: 'keywords', x: x + 10, y: y + 10, 'font-size': 10,
        fill: '#8e44ad',
      });
      kw.textContent = node.keywords.join(', ');
      group.appendChild(kw);
    }
    if (options.onNodeClick) {
      group.addEventListener('click', () => options.onNodeClick!(node.id));
    }
    svg.appendChild(group);
  }

  container.replaceChildren(svg);
  return svg;
}

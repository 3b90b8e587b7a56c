"""Deterministic DOT and ASCII rendering of rewriting trees.

And-nodes draw as boxes, clause or-nodes as ellipses, placeholder
variables as diamonds, truncation markers as dashed boxes.  When the tree
is a success, the nodes of its proof skeleton carry a bold style.  Output
is byte-stable: nodes are emitted in sorted address order.
"""

from __future__ import annotations

from .program import pretty
from .rewrite import AndNode, OrClause, OrVar, RewritingTree, Truncated, witness_addresses
from .term import Address

EMPTY_LABEL = "⊥"


def _node_id(address: Address) -> str:
    return "n" + "".join(f"_{i}" for i in address)


def _label(node) -> str:
    if isinstance(node, AndNode):
        return pretty(node.term)
    if isinstance(node, OrClause):
        return pretty(node.instance)
    if isinstance(node, OrVar):
        return node.var.label
    return "..."


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(tree: RewritingTree | None, name: str = "rewriting_tree") -> str:
    """Graphviz source for a rewriting tree; a lone bottom node when the
    tree is empty (a dead transition)."""
    lines = [f"digraph {name} {{", '  node [fontname="Helvetica"];']
    if tree is None:
        lines.append(f'  empty [shape=plaintext, label="{EMPTY_LABEL}"];')
        lines.append("}")
        return "\n".join(lines)
    witness = witness_addresses(tree)
    for address in sorted(tree.nodes):
        node = tree.nodes[address]
        if isinstance(node, AndNode):
            shape, styles = "box", []
        elif isinstance(node, OrClause):
            shape, styles = "ellipse", []
        elif isinstance(node, OrVar):
            shape, styles = "diamond", []
        else:
            shape, styles = "box", ["dashed"]
        if address in witness:
            styles.append("bold")
        style = f', style="{",".join(styles)}"' if styles else ""
        lines.append(
            f'  {_node_id(address)} [shape={shape}, label="{_escape(_label(node))}"{style}];'
        )
    for address in sorted(tree.nodes):
        if address:
            lines.append(f"  {_node_id(address[:-1])} -> {_node_id(address)};")
    lines.append("}")
    return "\n".join(lines)


def to_ascii(tree: RewritingTree | None) -> str:
    """Indented text rendering; witness nodes are starred."""
    if tree is None:
        return EMPTY_LABEL
    witness = witness_addresses(tree)
    lines = []

    def tag(node) -> str:
        if isinstance(node, AndNode):
            return "[and]"
        if isinstance(node, OrClause):
            return "[or]" if node.clause_index is None else f"[or {node.clause_index}]"
        if isinstance(node, OrVar):
            return "[var]"
        return "[cut]"

    def walk(address: Address) -> None:
        node = tree.nodes[address]
        mark = " *" if address in witness else ""
        lines.append(f"{'  ' * len(address)}{tag(node)} {_label(node)}{mark}")
        for child in tree.children(address):
            walk(child)

    walk(())
    return "\n".join(lines)

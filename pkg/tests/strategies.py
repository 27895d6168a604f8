from hypothesis import strategies as st

from ltlkit.formula import FALSUM, Implies, Next, Until, Var


def formulas(max_var: int = 3, max_leaves: int = 12):
    leaves = st.one_of(st.just(FALSUM), st.integers(1, max_var).map(Var))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Next),
            st.tuples(sub, sub).map(lambda ab: Implies(*ab)),
            st.tuples(sub, sub).map(lambda ab: Until(*ab)),
        ),
        max_leaves=max_leaves,
    )

from twisted_kernel.arithmetic.characters import DirichletCharacter, all_characters
from twisted_kernel.utils.exceptions import CharacterNotFoundError


class CharacterRegistry:
    """In-memory store of character tables, keyed by modulus and filled on first access"""

    def __init__(self):
        self._store: dict[int, tuple[DirichletCharacter, ...]] = {}

    def get(self, modulus: int) -> tuple[DirichletCharacter, ...]:
        """Return all characters mod `modulus` in canonical order"""
        if modulus not in self._store:
            self._store[modulus] = all_characters(modulus)
        return self._store[modulus]

    def has(self, modulus: int) -> bool:
        """Check if the table for `modulus` is already built"""
        return modulus in self._store

    def clear(self) -> None:
        """Drop all cached tables"""
        self._store.clear()


def get_characters_by_index(
    registry: CharacterRegistry, modulus: int, indices: list[int]
) -> list[DirichletCharacter]:
    """Get characters by their canonical index with comprehensive error handling.

    Args:
        registry: Registry holding the character tables.
        modulus: Modulus of the requested characters.
        indices: Canonical indices (lexicographic in generator exponents).

    Returns:
        list[DirichletCharacter]: The matching characters, in request order.

    Raises:
        CharacterNotFoundError: If any requested index does not exist for the modulus.
    """
    table = registry.get(modulus)
    found = []
    missing = []

    for index in indices:
        if 0 <= index < len(table):
            found.append(table[index])
        else:
            missing.append(index)

    if missing:
        raise CharacterNotFoundError(
            f"Character indices {missing} not found for modulus {modulus}. Available indices: 0..{len(table) - 1}"
        )

    return found

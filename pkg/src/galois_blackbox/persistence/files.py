import logging
from pathlib import Path
from typing import Iterable, Optional, Sequence, Type, TypeVar, Union

import pandas as pd
from pandas.errors import EmptyDataError, ParserError
from pydantic import BaseModel, ValidationError

from ..exceptions import ParseError

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ["prime", "trace", "det", "mod2pow"]

ModelT = TypeVar("ModelT", bound=BaseModel)
PathLike = Union[str, Path]


def read_oracle_table(path: PathLike) -> pd.DataFrame:
    """
    Read an oracle table: 'prime <tab> trace [<tab> det] [<tab> mod2pow]' per line.

    Every cell comes back as a string; absent optional cells are ''.
    An empty file (or one holding only comments) yields an empty frame.
    """
    try:
        df = pd.read_csv(
            path,
            sep="\t",
            comment="#",
            header=None,
            names=TABLE_COLUMNS,
            dtype=str,
            skip_blank_lines=True,
            keep_default_na=False,
        )
    except EmptyDataError:
        return pd.DataFrame(columns=TABLE_COLUMNS)
    except ParserError as e:
        raise ParseError(f"{path}: {e}") from e
    df = df.fillna("").apply(lambda col: col.str.strip())
    df = df[df["prime"] != ""].reset_index(drop=True)
    logger.debug(f"Read {len(df)} table rows from {path}")
    return df


def write_oracle_table(
    path: PathLike,
    rows: Iterable[Sequence[object]],
    header: Optional[str] = None,
) -> int:
    """Write (prime, trace, det[, mod2pow]) rows; returns the row count."""
    df = pd.DataFrame([list(r) for r in rows])
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        if header:
            for line in header.splitlines():
                f.write(f"# {line}\n")
        if not df.empty:
            df.to_csv(f, sep="\t", header=False, index=False)
    logger.info(f"Wrote {len(df)} rows to {out}")
    return len(df)


def write_document(path: PathLike, document: BaseModel) -> None:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {type(document).__name__} to {out}")


def read_document(path: PathLike, model: Type[ModelT]) -> ModelT:
    try:
        return model.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise ParseError(f"{path}: not a valid {model.__name__}: {e}") from e

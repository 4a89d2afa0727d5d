# storage/run_ledger.py
"""
SQLite ledger of Monte-Carlo batches, so repeated experiments can be compared.

Tables:

    mc_batches  id, created_at, scenario, master_seed, n_runs, hybrid_wins,
                pooled_ble_median, pooled_hybrid_median, pooled_ratio
    mc_runs     id, batch_id, run_index, seed, ble_median, hybrid_median,
                median_ratio
"""

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Union

from sqlalchemy import Column, Float, ForeignKey, Integer, String, Text, create_engine, select
from sqlalchemy.orm import DeclarativeBase, sessionmaker

logger = logging.getLogger(__name__)

ISO_FORMAT = "%Y-%m-%dT%H:%M:%S.%fZ"


class Base(DeclarativeBase):
    """Base class for ledger models."""
    pass


class Batch(Base):
    __tablename__ = "mc_batches"

    id = Column(Integer, primary_key=True, index=True, autoincrement=True)
    created_at = Column(Text, nullable=False)
    scenario = Column(Text, nullable=True)
    # stored as text; SQLite INTEGER is signed 64-bit
    master_seed = Column(String(24), nullable=False)
    n_runs = Column(Integer, nullable=False)
    hybrid_wins = Column(Integer, nullable=False)
    pooled_ble_median = Column(Float, nullable=False)
    pooled_hybrid_median = Column(Float, nullable=False)
    pooled_ratio = Column(Float, nullable=False)


class Run(Base):
    __tablename__ = "mc_runs"

    id = Column(Integer, primary_key=True, index=True, autoincrement=True)
    batch_id = Column(Integer, ForeignKey("mc_batches.id"), nullable=False, index=True)
    run_index = Column(Integer, nullable=False)
    seed = Column(String(24), nullable=False)
    ble_median = Column(Float, nullable=False)
    hybrid_median = Column(Float, nullable=False)
    median_ratio = Column(Float, nullable=False)


@dataclass
class BatchSummary:
    id: int
    created_at: str
    scenario: Optional[str]
    master_seed: int
    n_runs: int
    hybrid_wins: int
    pooled_ratio: float


@dataclass
class RunView:
    run_index: int
    seed: int
    ble_median: float
    hybrid_median: float
    median_ratio: float


class RunLedger:
    """Append-only store for Monte-Carlo reports."""

    def __init__(self, db_path: Union[str, Path]):
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.engine = create_engine(f"sqlite:///{self.db_path}")
        self.Session = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
        Base.metadata.create_all(bind=self.engine)

    def record(self, report, scenario: Optional[str] = None) -> int:
        """Persist a MonteCarloReport; returns the batch id."""
        with self.Session() as session:
            batch = Batch(
                created_at=datetime.now(timezone.utc).strftime(ISO_FORMAT),
                scenario=scenario,
                master_seed=str(report.master_seed),
                n_runs=len(report.runs),
                hybrid_wins=report.hybrid_wins,
                pooled_ble_median=report.pooled_ble_median,
                pooled_hybrid_median=report.pooled_hybrid_median,
                pooled_ratio=report.pooled_ratio,
            )
            session.add(batch)
            session.flush()
            for run in report.runs:
                session.add(
                    Run(
                        batch_id=batch.id,
                        run_index=run.run_index,
                        seed=str(run.seed),
                        ble_median=run.report.ble.median,
                        hybrid_median=run.report.hybrid.median,
                        median_ratio=run.report.median_ratio,
                    )
                )
            session.commit()
            logger.info("recorded Monte-Carlo batch %d (%d runs) in %s", batch.id, len(report.runs), self.db_path)
            return batch.id

    def list_batches(self) -> List[BatchSummary]:
        with self.Session() as session:
            rows = session.scalars(select(Batch).order_by(Batch.id)).all()
            return [
                BatchSummary(
                    r.id, r.created_at, r.scenario, int(r.master_seed), r.n_runs, r.hybrid_wins, r.pooled_ratio
                )
                for r in rows
            ]

    def runs(self, batch_id: int) -> List[RunView]:
        with self.Session() as session:
            rows = session.scalars(
                select(Run).where(Run.batch_id == batch_id).order_by(Run.run_index)
            ).all()
            return [RunView(r.run_index, int(r.seed), r.ble_median, r.hybrid_median, r.median_ratio) for r in rows]

    def close(self) -> None:
        self.engine.dispose()

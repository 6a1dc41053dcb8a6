"""Report export functionality (TSV and structured JSON)."""

import logging
from pathlib import Path
from typing import Optional

from pydantic import BaseModel

from msnumber.config.schema import ClassificationReport, VerificationSummary

logger = logging.getLogger(__name__)


class ReportExporter:
    """Export reports in various formats."""

    @staticmethod
    def classification_tsv(report: ClassificationReport) -> str:
        """One "n<TAB>w<TAB>count<TAB>rep1,rep2,..." line per class, sorted by (n, w)."""
        lines = [
            f"{entry.n}\t{entry.w}\t{entry.count}\t{','.join(entry.representatives)}"
            for entry in report.classes
        ]
        return "".join(line + "\n" for line in lines)

    @staticmethod
    def verification_text(summary: VerificationSummary) -> str:
        lines = [f"checked\t{summary.checked}"]
        lines += [f"order\t{n}\t{count}" for n, count in sorted(summary.by_order.items())]
        lines.append(f"malformed\t{summary.malformed}")
        lines.append(f"mismatches\t{len(summary.mismatches)}")
        lines += [
            f"mismatch\t{m.graph6}\t{m.check}\texpected={m.expected}\tactual={m.actual}"
            for m in summary.mismatches
        ]
        return "\n".join(lines) + "\n"

    @staticmethod
    def structured(record: BaseModel, exclude: Optional[set] = None) -> str:
        """Indented JSON rendering of any report record."""
        return record.model_dump_json(indent=2, exclude=exclude) + "\n"

    @staticmethod
    def export_file(content: str, filename: str, suffix: str = ".tsv") -> Path:
        """Write a rendered report to disk.

        Args:
            content: Rendered report
            filename: Target path
            suffix: Extension appended when the path has none

        Returns:
            Path written
        """
        path = Path(filename)
        if not path.suffix:
            path = path.with_suffix(suffix)
        path.write_text(content, encoding="utf-8")
        logger.info(f"Exported report: {path}")
        return path

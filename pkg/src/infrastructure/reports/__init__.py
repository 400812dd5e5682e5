from src.infrastructure.reports.file_report_store import FileReportStore

__all__ = ["FileReportStore"]

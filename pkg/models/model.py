import uuid
from sqlalchemy import Column, DateTime, String, Text, func
from db.database import Base


class Artifact(Base):
    __tablename__ = 'artifact'
    id = Column(String(36), primary_key=True, default=lambda: str(uuid.uuid4()), index=True)
    job_key = Column(String(64), nullable=False, unique=True, index=True)
    command = Column(String, nullable=False, index=True)
    tiling = Column(String, nullable=True, index=True)
    payload = Column(Text, nullable=False)  # JSON đã chuẩn hoá
    create_datetime = Column(DateTime, default=func.now())
    update_datetime = Column(DateTime, default=func.now(), onupdate=func.now())

from sqlalchemy import create_engine
from sqlalchemy.orm import declarative_base, sessionmaker
from dotenv import load_dotenv
import os

load_dotenv()

# Kho artifact mặc định là file sqlite cạnh thư mục chạy
DATABASE_URL = os.getenv("QUASITILE_DATABASE_URL", "sqlite:///./quasitile.db")

# sqlite cần tắt check_same_thread vì worker thread có thể dùng chung engine
connect_args = {"check_same_thread": False} if DATABASE_URL.startswith("sqlite") else {}

# Tạo engine và session
engine = create_engine(DATABASE_URL, connect_args=connect_args)
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)

# Base class cho các model
Base = declarative_base()


def get_db():
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()

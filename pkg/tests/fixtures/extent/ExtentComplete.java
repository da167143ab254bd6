package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class ExtentComplete {
    public int rowCount(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT * FROM rows", null);
        int n = c.getCount();
        return n;
    }
}

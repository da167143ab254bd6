package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class MoveToFirstNegatedClose {
    public String firstName(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT name FROM people", null);
        if (!c.moveToFirst()) {
            c.close();
            return null;
        }
        String name = c.getString(0);
        c.close();
        return name;
    }
}
